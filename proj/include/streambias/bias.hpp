#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "streambias/bootstrap.hpp"
#include "streambias/execution.hpp"
#include "streambias/timeseries.hpp"

namespace streambias {

enum class Verdict { Unbiased, OverRepresented, UnderRepresented, NoData };

/// "UNBIASED", "OVER", "UNDER" or "NODATA".
std::string_view to_string(Verdict verdict) noexcept;

/// Floor applied to a bin's band spread before the +/- multiplier is used.
inline constexpr double kSigmaFloor = 1e-6;

struct BandParams {
  std::size_t n_replicates = kDefaultReplicates;
  double sigma_multiplier = kDefaultSigmaMultiplier;
  std::uint64_t seed = 0;
  double sigma_floor = kSigmaFloor;
  Execution execution = Execution::Parallel;

  /// Throws ConfigError for fewer than two replicates or a non-positive
  /// multiplier.
  void validate() const;
};

struct BiasReport {
  std::string hashtag;
  std::vector<Verdict> verdicts;
  BootstrapBand band;
  NormalizedSeries streaming_z;

  std::size_t count(Verdict v) const;
};

/// Compares the standard-scored streaming series against a bootstrap band
/// built from the reference sample's in-window occurrences.
///
/// A bin is NoData when it is a known zero or when the sample series is
/// degenerate (constant, including all zero). Otherwise, with
/// s = max(sigma_b, sigma_floor), it is OverRepresented when
/// z > mu_b + m*s, UnderRepresented when z < mu_b - m*s, and Unbiased
/// in between.
BiasReport detect_bias(const TimeSeries& streaming, const TimeSeries& sample,
                       const BandParams& params = {});

/// detect_bias for each hashtag, run in parallel across hashtags when
/// `params.execution` is Parallel. Each hashtag uses `params.seed`, so its
/// report matches a standalone detect_bias call.
std::vector<BiasReport> detect_bias(const HashtagIndex& streaming, const HashtagIndex& sample,
                                    std::span<const std::string> hashtags,
                                    const BinGeometry& geometry, const BandParams& params = {});

}  // namespace streambias
