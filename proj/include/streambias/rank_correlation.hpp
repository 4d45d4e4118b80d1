#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "streambias/ingest.hpp"

namespace streambias {

struct RankCorrelationResult {
  std::size_t k = 0;        // list length the comparison was made at
  std::size_t n_items = 0;  // items entering the statistic
  double tau_b = 0.0;
  double p_value = 1.0;  // two-sided, H0: tau = 0
  std::uint64_t n_concordant = 0;
  std::uint64_t n_discordant = 0;
};

/// Kendall's tau-b between paired observations, with tie correction, and the
/// two-sided p-value from the normal approximation using the tie-adjusted
/// variance of S = concordant - discordant. O(n log n).
///
/// Throws InsufficientDataError when fewer than two pairs are given or when
/// either variable is constant (tau-b undefined).
RankCorrelationResult kendall_tau_b(std::span<const double> x, std::span<const double> y);

/// tau-b between two ranked hashtag lists. Each item takes its competition
/// rank by count within its list (equal counts tie); an item missing from a
/// list is placed at rank size+1 in that list.
RankCorrelationResult kendall_tau_b(std::span<const HashtagCount> a,
                                    std::span<const HashtagCount> b);

/// k_step, 2*k_step, ..., up to and including k_max.
std::vector<std::size_t> k_grid(std::size_t k_step, std::size_t k_max);

/// tau-b of the top-k lists of two indexes for every k in `ks`.
std::vector<RankCorrelationResult> rank_correlation_curve(const HashtagIndex& a,
                                                          const HashtagIndex& b,
                                                          std::span<const std::size_t> ks);

}  // namespace streambias
