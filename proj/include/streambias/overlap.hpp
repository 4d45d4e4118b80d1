#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "streambias/ingest.hpp"

namespace streambias {

/// Sorted, duplicate-free set of record ids.
class IdSet {
 public:
  IdSet() = default;
  explicit IdSet(std::vector<RecordId> ids);

  static IdSet of(std::span<const TweetRecord> records);
  /// Ids of records with lo <= ts < hi.
  static IdSet of(std::span<const TweetRecord> records, Timestamp lo, Timestamp hi);

  std::span<const RecordId> ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool operator==(const IdSet&) const = default;

 private:
  std::vector<RecordId> ids_;
};

/// |A n B| / |A u B|; two empty sets score 1.
double jaccard(const IdSet& a, const IdSet& b);

inline constexpr std::int64_t kDefaultWindowPeriod = 1200;
inline constexpr std::int64_t kDefaultWindowDuration = 1800;

/// Window i covers [start_ts + i*period, start_ts + i*period + duration).
struct WindowScheme {
  Timestamp start_ts = 0;
  std::int64_t period = kDefaultWindowPeriod;
  std::int64_t duration = kDefaultWindowDuration;
  std::size_t n_windows = 0;

  Timestamp window_begin(std::size_t i) const {
    return start_ts + static_cast<Timestamp>(i) * period;
  }
  Timestamp window_end(std::size_t i) const { return window_begin(i) + duration; }
  /// Shared interval of windows i and i+1; empty when duration <= period.
  Timestamp overlap_begin(std::size_t i) const { return window_begin(i + 1); }
  Timestamp overlap_end(std::size_t i) const { return window_end(i); }

  /// Throws ConfigError on a non-positive period or duration.
  void validate() const;
};

struct JaccardSummary {
  std::size_t n_comparisons = 0;
  double median = 0.0;
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

JaccardSummary summarize_scores(std::span<const double> scores);

/// Per window, Jaccard of the full-window id sets of the two streams.
std::vector<double> between_source_scores(std::span<const TweetRecord> a,
                                          std::span<const TweetRecord> b,
                                          const WindowScheme& scheme);
/// Throws ConfigError when the scheme has no windows.
JaccardSummary between_source_summary(std::span<const TweetRecord> a,
                                      std::span<const TweetRecord> b, const WindowScheme& scheme);

/// `windows[i]` holds what query i returned. Per adjacent pair (i, i+1) the
/// id sets are restricted to the scheme's overlap interval before scoring,
/// giving n_windows - 1 comparisons.
std::vector<double> between_time_scores(std::span<const std::vector<TweetRecord>> windows,
                                        const WindowScheme& scheme);
/// Throws ConfigError when windows do not overlap, when fewer than two windows
/// are given, or when `windows.size() != scheme.n_windows`.
JaccardSummary between_time_summary(std::span<const std::vector<TweetRecord>> windows,
                                     const WindowScheme& scheme);

/// Slices one stream into the scheme's windows.
std::vector<std::vector<TweetRecord>> cut_windows(std::span<const TweetRecord> stream,
                                                  const WindowScheme& scheme);

}  // namespace streambias
