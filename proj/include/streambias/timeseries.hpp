#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "streambias/execution.hpp"
#include "streambias/ingest.hpp"

namespace streambias {

inline constexpr std::int64_t kDefaultBinWidth = 3600;

/// Half-open bins [start + i*width, start + (i+1)*width), i in [0, n_bins).
struct BinGeometry {
  Timestamp start = 0;
  std::int64_t width = kDefaultBinWidth;
  std::size_t n_bins = 1;

  bool operator==(const BinGeometry&) const = default;

  Timestamp bin_begin(std::size_t i) const { return start + static_cast<Timestamp>(i) * width; }
  Timestamp end() const { return bin_begin(n_bins); }
  std::optional<std::size_t> bin_of(Timestamp ts) const;

  /// Throws GeometryError unless width >= 1 and n_bins >= 1.
  void validate() const;
};

/// Smallest geometry of the given width, aligned to a multiple of `width`,
/// that covers every timestamp in the given streams.
BinGeometry covering_geometry(std::span<const std::span<const TweetRecord>> streams,
                              std::int64_t width = kDefaultBinWidth);

struct TimeSeries {
  std::string hashtag;
  BinGeometry geometry;
  std::vector<std::uint64_t> counts;  // one per bin

  std::uint64_t total() const;
};

struct NormalizedSeries {
  std::vector<double> z;
  double mu = 0.0;
  double sigma = 0.0;
  bool degenerate = false;

  bool operator==(const NormalizedSeries&) const = default;
};

std::vector<std::uint64_t> bin_counts(std::span<const Occurrence> occurrences,
                                      const BinGeometry& geometry);

/// Occurrences outside the geometry are dropped. Unknown hashtags give an
/// all-zero series.
TimeSeries bin_counts(const HashtagIndex& index, const std::string& hashtag,
                      const BinGeometry& geometry);

/// z_i = (t_i - mean) / sd with the population standard deviation. A
/// constant series yields all zeros and `degenerate = true`.
NormalizedSeries standard_score(std::span<const double> values);
NormalizedSeries standard_score(std::span<const std::uint64_t> counts);
NormalizedSeries standard_score(const TimeSeries& series);

/// Bins where the streaming series has data and the reference sample has none.
std::vector<std::size_t> known_zero_bins(const TimeSeries& streaming, const TimeSeries& sample);

struct KnownZeroEntry {
  std::size_t rank = 0;  // 1 = most frequent streaming hashtag
  std::string hashtag;
  std::size_t known_zeros = 0;
  std::size_t cumulative = 0;

  bool operator==(const KnownZeroEntry&) const = default;
};

/// Cumulative known-zero curve over the `top_n` most frequent streaming
/// hashtags.
std::vector<KnownZeroEntry> cumulative_known_zeros(const HashtagIndex& streaming,
                                                   const HashtagIndex& sample, std::size_t top_n,
                                                   const BinGeometry& geometry,
                                                   Execution execution = Execution::Parallel);

}  // namespace streambias
