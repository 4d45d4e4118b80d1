#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "streambias/bootstrap.hpp"
#include "streambias/ingest.hpp"
#include "streambias/overlap.hpp"
#include "streambias/timeseries.hpp"

namespace streambias::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;

enum class Subcommand { Bias, RankCorr, Zeros, Overlap, Synth, Baseline };

struct RunConfig {
  Subcommand subcommand = Subcommand::Bias;

  // inputs
  std::string streaming;
  std::string sample;
  std::string a;
  std::string b;
  std::string firehose;
  std::string scenario;
  std::string query_dir;
  std::string hashtag;

  // binning
  std::int64_t bin_width = kDefaultBinWidth;
  std::optional<Timestamp> bin_start;
  std::optional<std::size_t> n_bins;

  // bootstrap band
  std::size_t replicates = kDefaultReplicates;
  double sigma = kDefaultSigmaMultiplier;

  // ranking grids
  std::size_t top_k = 1000;
  std::size_t k_max = 50;
  std::size_t k_step = 10;

  // baseline
  std::size_t draws = 100;
  std::optional<std::size_t> sample_size;

  // overlap windows
  std::optional<Timestamp> window_start;
  std::int64_t period = kDefaultWindowPeriod;
  std::int64_t duration = kDefaultWindowDuration;
  std::optional<std::size_t> n_windows;

  /// Absent means 0, except for `synth`, where the scenario's own seed field
  /// (itself 0 when omitted) applies.
  std::optional<std::uint64_t> seed;

  std::string out = "-";  // "-" is stdout
  std::string out_dir;
  std::string series_dir;
};

/// Executes one subcommand. Returns kExitOk, kExitError (bad input data,
/// I/O failure) or kExitUsage (inconsistent flags). Diagnostics go to `err`
/// as a single line.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace streambias::cli
