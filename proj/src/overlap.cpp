#include "streambias/overlap.hpp"

#include <algorithm>
#include <cmath>

#include "streambias/error.hpp"

namespace streambias {

namespace {

// (ts, id) pairs sorted by time so window slices are two binary searches.
class TimeOrderedIds {
 public:
  explicit TimeOrderedIds(std::span<const TweetRecord> records) {
    entries_.reserve(records.size());
    for (const auto& rec : records) entries_.push_back({rec.id, rec.ts});
    std::sort(entries_.begin(), entries_.end());
  }

  IdSet slice(Timestamp lo, Timestamp hi) const {
    auto by_ts = [](const Occurrence& o, Timestamp t) { return o.ts < t; };
    auto first = std::lower_bound(entries_.begin(), entries_.end(), lo, by_ts);
    auto last = std::lower_bound(first, entries_.end(), hi, by_ts);
    std::vector<RecordId> ids;
    ids.reserve(static_cast<std::size_t>(last - first));
    for (auto it = first; it != last; ++it) ids.push_back(it->id);
    return IdSet(std::move(ids));
  }

 private:
  std::vector<Occurrence> entries_;
};

}  // namespace

IdSet::IdSet(std::vector<RecordId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

IdSet IdSet::of(std::span<const TweetRecord> records) {
  std::vector<RecordId> ids;
  ids.reserve(records.size());
  for (const auto& rec : records) ids.push_back(rec.id);
  return IdSet(std::move(ids));
}

IdSet IdSet::of(std::span<const TweetRecord> records, Timestamp lo, Timestamp hi) {
  std::vector<RecordId> ids;
  for (const auto& rec : records) {
    if (rec.ts >= lo && rec.ts < hi) ids.push_back(rec.id);
  }
  return IdSet(std::move(ids));
}

double jaccard(const IdSet& a, const IdSet& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  auto ia = a.ids().begin();
  auto ib = b.ids().begin();
  while (ia != a.ids().end() && ib != b.ids().end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const std::size_t united = a.size() + b.size() - common;
  return static_cast<double>(common) / static_cast<double>(united);
}

void WindowScheme::validate() const {
  if (period < 1) throw ConfigError("period", "must be at least 1 second");
  if (duration < 1) throw ConfigError("duration", "must be at least 1 second");
}

JaccardSummary summarize_scores(std::span<const double> scores) {
  JaccardSummary s;
  s.n_comparisons = scores.size();
  if (scores.empty()) return s;
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  s.median = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  double sum = 0.0;
  for (double v : scores) sum += v;
  s.mean = sum / static_cast<double>(scores.size());
  double ss = 0.0;
  for (double v : scores) ss += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(scores.size()));
  return s;
}

std::vector<double> between_source_scores(std::span<const TweetRecord> a,
                                          std::span<const TweetRecord> b,
                                          const WindowScheme& scheme) {
  scheme.validate();
  if (scheme.n_windows == 0) throw ConfigError("n_windows", "at least one window is required");
  const TimeOrderedIds ta(a), tb(b);
  std::vector<double> scores;
  scores.reserve(scheme.n_windows);
  for (std::size_t i = 0; i < scheme.n_windows; ++i) {
    const auto lo = scheme.window_begin(i), hi = scheme.window_end(i);
    scores.push_back(jaccard(ta.slice(lo, hi), tb.slice(lo, hi)));
  }
  return scores;
}

JaccardSummary between_source_summary(std::span<const TweetRecord> a,
                                      std::span<const TweetRecord> b, const WindowScheme& scheme) {
  return summarize_scores(between_source_scores(a, b, scheme));
}

std::vector<double> between_time_scores(std::span<const std::vector<TweetRecord>> windows,
                                        const WindowScheme& scheme) {
  scheme.validate();
  if (scheme.duration <= scheme.period) {
    throw ConfigError("duration", "windows do not overlap (duration <= period)");
  }
  if (windows.size() < 2) throw ConfigError("n_windows", "at least two windows are required");
  if (windows.size() != scheme.n_windows) {
    throw ConfigError("n_windows", "scheme declares " + std::to_string(scheme.n_windows) +
                                       " windows but " + std::to_string(windows.size()) +
                                       " were given");
  }
  std::vector<double> scores;
  scores.reserve(windows.size() - 1);
  for (std::size_t i = 0; i + 1 < windows.size(); ++i) {
    const auto lo = scheme.overlap_begin(i), hi = scheme.overlap_end(i);
    scores.push_back(jaccard(IdSet::of(windows[i], lo, hi), IdSet::of(windows[i + 1], lo, hi)));
  }
  return scores;
}

JaccardSummary between_time_summary(std::span<const std::vector<TweetRecord>> windows,
                                    const WindowScheme& scheme) {
  return summarize_scores(between_time_scores(windows, scheme));
}

std::vector<std::vector<TweetRecord>> cut_windows(std::span<const TweetRecord> stream,
                                                  const WindowScheme& scheme) {
  scheme.validate();
  std::vector<std::vector<TweetRecord>> windows(scheme.n_windows);
  for (std::size_t i = 0; i < scheme.n_windows; ++i) {
    const auto lo = scheme.window_begin(i), hi = scheme.window_end(i);
    for (const auto& rec : stream) {
      if (rec.ts >= lo && rec.ts < hi) windows[i].push_back(rec);
    }
  }
  return windows;
}

}  // namespace streambias
