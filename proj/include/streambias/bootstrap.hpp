#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "streambias/execution.hpp"
#include "streambias/ingest.hpp"
#include "streambias/timeseries.hpp"

namespace streambias {

inline constexpr std::size_t kDefaultReplicates = 100;
inline constexpr double kDefaultSigmaMultiplier = 3.0;

/// Each replicate draws |occurrences| items with replacement, bins them with
/// `geometry` and standard-scores the counts. Replicate r uses the substream
/// (seed, r), so the output does not depend on the execution mode or thread
/// count. Throws InsufficientDataError on an empty occurrence list.
std::vector<NormalizedSeries> bootstrap_replicates(std::span<const Occurrence> occurrences,
                                                   std::size_t n_replicates,
                                                   const BinGeometry& geometry, std::uint64_t seed,
                                                   Execution execution = Execution::Parallel);

/// Per-bin mean and sample (n-1) standard deviation over replicates.
struct BootstrapBand {
  std::size_t n_replicates = 0;
  std::vector<double> mu_b;
  std::vector<double> sigma_b;
  double sigma_multiplier = kDefaultSigmaMultiplier;

  bool operator==(const BootstrapBand&) const = default;
};

BootstrapBand build_band(std::span<const NormalizedSeries> replicates,
                         double sigma_multiplier = kDefaultSigmaMultiplier,
                         Execution execution = Execution::Parallel);

}  // namespace streambias
