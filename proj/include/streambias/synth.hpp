#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "streambias/ingest.hpp"
#include "streambias/timeseries.hpp"

namespace streambias {

inline constexpr double kDefaultBiasDelta = 0.25;

/// Rate multiplier on one hashtag over bins [start_bin, end_bin).
struct Spike {
  std::string hashtag;
  std::size_t start_bin = 0;
  std::size_t end_bin = 0;
  double multiplier = 1.0;
};

/// Inclusion multiplier g on one hashtag over bins [start_bin, end_bin).
struct ScheduleEntry {
  std::string hashtag;
  std::size_t start_bin = 0;
  std::size_t end_bin = 0;
  double g = 1.0;
};

enum class SamplerKind { Uniform, BiasSchedule, RateCapHead };

std::string_view to_string(SamplerKind kind) noexcept;

struct SamplerConfig {
  SamplerKind kind = SamplerKind::Uniform;
  std::string name;
  double p = 1.0;                       // Uniform, BiasSchedule
  std::vector<ScheduleEntry> schedule;  // BiasSchedule
  std::uint64_t cap = 0;                // RateCapHead: records kept per bin

  static SamplerConfig uniform(double p, std::string name = "sample");
  static SamplerConfig bias_schedule(double p, std::vector<ScheduleEntry> schedule,
                                     std::string name = "streaming");
  static SamplerConfig rate_cap_head(std::uint64_t cap, std::string name = "capped");

  /// Throws ConfigError naming `field_prefix`.<field>.
  void validate(const BinGeometry& geometry, const std::string& field_prefix = "sampler") const;
};

struct Scenario {
  std::size_t n_hashtags = 0;
  double zipf_exponent = 1.0;
  double base_rate = 0.0;  // expected firehose records per bin, all hashtags
  std::size_t n_bins = 0;
  std::int64_t bin_width = kDefaultBinWidth;
  Timestamp start_ts = 0;
  std::vector<Spike> spikes;
  std::vector<SamplerConfig> samplers;
  std::uint64_t seed = 0;
  double delta = kDefaultBiasDelta;

  BinGeometry geometry() const { return {start_ts, bin_width, n_bins}; }
  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// "h" followed by the 1-based popularity rank, zero padded to the width of
/// n_hashtags, so lexicographic order equals popularity order.
std::string hashtag_name(std::size_t rank, std::size_t n_hashtags);

/// Normalized Zipf weights, rank 1 first; they sum to 1.
std::vector<double> zipf_weights(std::size_t n, double exponent);

/// Per bin and hashtag, a Poisson(base_rate * weight * spikes) number of
/// single-tag records with timestamps uniform inside the bin. Ids increase
/// with (ts, draw order). Deterministic in scenario.seed.
std::vector<TweetRecord> generate_firehose(const Scenario& scenario);

/// hashtag -> sorted bin indices.
using BiasedBins = std::map<std::string, std::vector<std::size_t>>;

struct SampledStream {
  std::string name;
  SamplerKind kind = SamplerKind::Uniform;
  std::vector<TweetRecord> records;
  BiasedBins biased_bins;
};

/// Thins the firehose. Uniform keeps each record with probability p.
/// BiasSchedule keeps a record with probability p*g, where g is the largest
/// of its tags' multipliers for its bin; a tag without a schedule entry
/// counts as 1, and so does an untagged record. RateCapHead keeps the first `cap` records of every bin in
/// (ts, id) order.
///
/// Ground truth: a (hashtag, bin) with firehose activity is biased when its
/// effective inclusion multiplier g satisfies |g - 1| >= delta. For
/// BiasSchedule g is the schedule value; for RateCapHead it is the bin's
/// keep rate for that hashtag divided by the overall keep rate. Uniform
/// never produces biased bins.
///
/// The output preserves firehose order. Randomness comes from the substream
/// (seed, stream).
SampledStream apply_sampler(std::span<const TweetRecord> firehose, const SamplerConfig& config,
                            const BinGeometry& geometry, std::uint64_t seed,
                            std::uint64_t stream = 0, double delta = kDefaultBiasDelta);

struct GroundTruth {
  std::vector<TweetRecord> firehose;
  std::vector<SampledStream> streams;  // one per scenario sampler, same order
  double delta = kDefaultBiasDelta;
};

/// generate_firehose followed by every sampler; sampler j uses the substream
/// (scenario.seed, j).
GroundTruth simulate(const Scenario& scenario);

/// Scenario file reader. Required keys: n_hashtags, zipf_exponent, base_rate,
/// n_bins. Unknown keys are rejected.
Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::filesystem::path& path);

/// Ground-truth summary as a JSON document (delta, seed and per-sampler
/// biased bins).
void write_ground_truth(std::ostream& out, const GroundTruth& truth, std::uint64_t seed);

}  // namespace streambias
