#include "streambias/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "parallel.hpp"
#include "streambias/error.hpp"

namespace streambias {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void require_same_geometry(const TimeSeries& a, const TimeSeries& b) {
  if (a.geometry != b.geometry || a.counts.size() != b.counts.size()) {
    throw GeometryError("time series '" + a.hashtag + "' and '" + b.hashtag +
                        "' do not share bin geometry");
  }
}

}  // namespace

std::optional<std::size_t> BinGeometry::bin_of(Timestamp ts) const {
  if (ts < start) return std::nullopt;
  auto i = static_cast<std::uint64_t>((ts - start) / width);
  if (i >= n_bins) return std::nullopt;
  return static_cast<std::size_t>(i);
}

void BinGeometry::validate() const {
  if (width < 1) throw GeometryError("bin width must be at least 1 second");
  if (n_bins < 1) throw GeometryError("at least one bin is required");
}

BinGeometry covering_geometry(std::span<const std::span<const TweetRecord>> streams,
                              std::int64_t width) {
  BinGeometry g;
  g.width = width;
  g.validate();
  auto lo = std::numeric_limits<Timestamp>::max();
  auto hi = std::numeric_limits<Timestamp>::min();
  for (auto stream : streams) {
    for (const auto& rec : stream) {
      lo = std::min(lo, rec.ts);
      hi = std::max(hi, rec.ts);
    }
  }
  if (lo > hi) return g;
  g.start = floor_div(lo, width) * width;
  g.n_bins = static_cast<std::size_t>(floor_div(hi - g.start, width)) + 1;
  return g;
}

std::uint64_t TimeSeries::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::vector<std::uint64_t> bin_counts(std::span<const Occurrence> occurrences,
                                      const BinGeometry& geometry) {
  geometry.validate();
  std::vector<std::uint64_t> counts(geometry.n_bins, 0);
  for (const auto& occ : occurrences) {
    if (auto bin = geometry.bin_of(occ.ts)) ++counts[*bin];
  }
  return counts;
}

TimeSeries bin_counts(const HashtagIndex& index, const std::string& hashtag,
                      const BinGeometry& geometry) {
  geometry.validate();
  TimeSeries series{hashtag, geometry, std::vector<std::uint64_t>(geometry.n_bins, 0)};
  auto occ = index.occurrences(hashtag);
  // occurrences are ts-ordered: only the window slice needs a visit
  auto first = std::lower_bound(occ.begin(), occ.end(), geometry.start,
                                [](const Occurrence& o, Timestamp t) { return o.ts < t; });
  const Timestamp end = geometry.end();
  for (auto it = first; it != occ.end() && it->ts < end; ++it) {
    ++series.counts[static_cast<std::size_t>((it->ts - geometry.start) / geometry.width)];
  }
  return series;
}

NormalizedSeries standard_score(std::span<const double> values) {
  NormalizedSeries out;
  out.z.assign(values.size(), 0.0);
  if (values.empty()) {
    out.degenerate = true;
    return out;
  }
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mu = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mu) * (v - mu);
  const double sigma = std::sqrt(ss / n);
  out.mu = mu;
  out.sigma = sigma;
  if (sigma == 0.0) {
    out.degenerate = true;
    return out;
  }
  for (std::size_t i = 0; i < values.size(); ++i) out.z[i] = (values[i] - mu) / sigma;
  return out;
}

NormalizedSeries standard_score(std::span<const std::uint64_t> counts) {
  std::vector<double> values(counts.begin(), counts.end());
  return standard_score(std::span<const double>(values));
}

NormalizedSeries standard_score(const TimeSeries& series) {
  return standard_score(std::span<const std::uint64_t>(series.counts));
}

std::vector<std::size_t> known_zero_bins(const TimeSeries& streaming, const TimeSeries& sample) {
  require_same_geometry(streaming, sample);
  std::vector<std::size_t> bins;
  for (std::size_t i = 0; i < streaming.counts.size(); ++i) {
    if (streaming.counts[i] > 0 && sample.counts[i] == 0) bins.push_back(i);
  }
  return bins;
}

std::vector<KnownZeroEntry> cumulative_known_zeros(const HashtagIndex& streaming,
                                                   const HashtagIndex& sample, std::size_t top_n,
                                                   const BinGeometry& geometry,
                                                   Execution execution) {
  if (top_n < 1) throw ConfigError("top_n", "must be at least 1");
  geometry.validate();
  const auto ranking = top_k_hashtags(streaming, top_n);
  std::vector<KnownZeroEntry> curve(ranking.size());

  auto one = [&](std::size_t r) {
    const auto& tag = ranking[r].hashtag;
    curve[r].rank = r + 1;
    curve[r].hashtag = tag;
    curve[r].known_zeros =
        known_zero_bins(bin_counts(streaming, tag, geometry), bin_counts(sample, tag, geometry))
            .size();
  };

  const auto n = static_cast<std::int64_t>(ranking.size());
  if (execution == Execution::Parallel) {
    detail::ExceptionSink sink;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t r = 0; r < n; ++r) {
      sink.run(static_cast<std::size_t>(r), [&] { one(static_cast<std::size_t>(r)); });
    }
    sink.rethrow();
  } else {
    for (std::int64_t r = 0; r < n; ++r) one(static_cast<std::size_t>(r));
  }

  std::size_t running = 0;
  for (auto& entry : curve) {
    running += entry.known_zeros;
    entry.cumulative = running;
  }
  return curve;
}

}  // namespace streambias
