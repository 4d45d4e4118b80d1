#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "streambias/execution.hpp"
#include "streambias/ingest.hpp"

namespace streambias {

inline constexpr std::size_t kDefaultBaselineDraws = 100;

struct BaselinePoint {
  std::size_t k = 0;
  double mean_tau_b = 0.0;
  double std_tau_b = 0.0;  // population std over draws; 0 for a single draw
};

/// Expected tau-b of a perfectly random sample against the full stream.
/// Each draw takes `sample_size` records uniformly without replacement,
/// ranks its hashtags and compares its top-k with the firehose top-k for
/// every k in `ks`. Draw d uses the substream (seed, d).
///
/// Throws ConfigError when sample_size exceeds the firehose, n_draws is zero
/// or `ks` is empty.
std::vector<BaselinePoint> random_sample_baseline(std::span<const TweetRecord> firehose,
                                                  std::size_t sample_size, std::size_t n_draws,
                                                  std::span<const std::size_t> ks,
                                                  std::uint64_t seed,
                                                  Execution execution = Execution::Parallel);

}  // namespace streambias
