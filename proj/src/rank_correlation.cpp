#include "streambias/rank_correlation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string_view>

#include "streambias/error.hpp"

namespace streambias {

namespace {

struct TieSums {
  std::uint64_t pairs = 0;  // sum t(t-1)/2
  double v = 0.0;           // sum t(t-1)(2t+5)
  double t1 = 0.0;          // sum t(t-1)
  double t2 = 0.0;          // sum t(t-1)(t-2)
};

void add_tie_group(TieSums& s, std::uint64_t t) {
  if (t < 2) return;
  const double d = static_cast<double>(t);
  s.pairs += t * (t - 1) / 2;
  s.v += d * (d - 1) * (2 * d + 5);
  s.t1 += d * (d - 1);
  s.t2 += d * (d - 1) * (d - 2);
}

// Tie groups of a sorted sequence.
template <class It>
TieSums tie_sums(It first, It last) {
  TieSums s;
  while (first != last) {
    auto run_end = std::find_if(first, last, [&](double v) { return v != *first; });
    add_tie_group(s, static_cast<std::uint64_t>(std::distance(first, run_end)));
    first = run_end;
  }
  return s;
}

// Sorts `v` ascending and returns the number of strict inversions (i < j,
// v[i] > v[j]) in its original order.
std::uint64_t count_inversions(std::vector<double>& v) {
  std::vector<double> buf(v.size());
  std::uint64_t inversions = 0;
  for (std::size_t width = 1; width < v.size(); width *= 2) {
    for (std::size_t lo = 0; lo < v.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, v.size());
      const std::size_t hi = std::min(lo + 2 * width, v.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[j] < v[i]) {
          inversions += mid - i;
          buf[k++] = v[j++];
        } else {
          buf[k++] = v[i++];
        }
      }
      while (i < mid) buf[k++] = v[i++];
      while (j < hi) buf[k++] = v[j++];
    }
    v.swap(buf);
  }
  return inversions;
}

}  // namespace

RankCorrelationResult kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InsufficientDataError("kendall_tau_b: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw InsufficientDataError("kendall_tau_b: need at least two items");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return y[a] < y[b];
  });

  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = x[order[i]];
    ys[i] = y[order[i]];
  }

  const TieSums tx = tie_sums(xs.begin(), xs.end());

  // pairs tied in both x and y are adjacent after the (x, y) sort
  std::uint64_t joint = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && xs[j] == xs[i] && ys[j] == ys[i]) ++j;
    const auto t = static_cast<std::uint64_t>(j - i);
    joint += t * (t - 1) / 2;
    i = j;
  }

  // within an x-tie group y ascends, so every strict y inversion is a
  // discordant pair
  std::vector<double> ysorted = ys;
  const std::uint64_t discordant = count_inversions(ysorted);
  const TieSums ty = tie_sums(ysorted.begin(), ysorted.end());

  const std::uint64_t n0 = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (tx.pairs == n0 || ty.pairs == n0) {
    throw InsufficientDataError("kendall_tau_b: a variable is constant, tau-b undefined");
  }
  const std::uint64_t concordant = n0 - tx.pairs - ty.pairs + joint - discordant;

  RankCorrelationResult r;
  r.n_items = n;
  r.k = n;
  r.n_concordant = concordant;
  r.n_discordant = discordant;
  const double s = static_cast<double>(concordant) - static_cast<double>(discordant);
  r.tau_b = s / std::sqrt(static_cast<double>(n0 - tx.pairs) * static_cast<double>(n0 - ty.pairs));

  const double dn = static_cast<double>(n);
  double var_s = (dn * (dn - 1) * (2 * dn + 5) - tx.v - ty.v) / 18.0;
  var_s += tx.t1 * ty.t1 / (2.0 * dn * (dn - 1));
  if (n > 2) var_s += tx.t2 * ty.t2 / (9.0 * dn * (dn - 1) * (dn - 2));
  r.p_value = var_s > 0.0 ? std::erfc(std::abs(s) / std::sqrt(var_s) / std::sqrt(2.0)) : 1.0;
  r.p_value = std::clamp(r.p_value, 0.0, 1.0);
  return r;
}

RankCorrelationResult kendall_tau_b(std::span<const HashtagCount> a,
                                    std::span<const HashtagCount> b) {
  // competition rank: 1 + number of strictly larger counts in the list
  auto ranks = [](std::span<const HashtagCount> list) {
    std::vector<std::size_t> counts;
    counts.reserve(list.size());
    for (const auto& item : list) counts.push_back(item.count);
    std::sort(counts.begin(), counts.end(), std::greater<>());
    std::map<std::string_view, double> out;
    for (const auto& item : list) {
      auto larger = std::lower_bound(counts.begin(), counts.end(), item.count, std::greater<>()) -
                    counts.begin();
      out.emplace(item.hashtag, static_cast<double>(larger + 1));
    }
    return out;
  };
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const double absent_a = static_cast<double>(a.size() + 1);
  const double absent_b = static_cast<double>(b.size() + 1);

  std::map<std::string_view, std::pair<double, double>> items;
  for (const auto& [tag, r] : ra) items[tag] = {r, absent_b};
  for (const auto& [tag, r] : rb) {
    auto it = items.find(tag);
    if (it == items.end()) {
      items[tag] = {absent_a, r};
    } else {
      it->second.second = r;
    }
  }

  std::vector<double> x, y;
  x.reserve(items.size());
  y.reserve(items.size());
  for (const auto& [_, xy] : items) {
    x.push_back(xy.first);
    y.push_back(xy.second);
  }
  auto result = kendall_tau_b(x, y);
  result.k = std::max(a.size(), b.size());
  return result;
}

std::vector<std::size_t> k_grid(std::size_t k_step, std::size_t k_max) {
  if (k_step < 1) throw ConfigError("k_step", "must be at least 1");
  std::vector<std::size_t> ks;
  for (std::size_t k = k_step; k <= k_max; k += k_step) ks.push_back(k);
  return ks;
}

std::vector<RankCorrelationResult> rank_correlation_curve(const HashtagIndex& a,
                                                          const HashtagIndex& b,
                                                          std::span<const std::size_t> ks) {
  const std::size_t k_max = ks.empty() ? 0 : *std::max_element(ks.begin(), ks.end());
  const auto full_a = top_k_hashtags(a, k_max);
  const auto full_b = top_k_hashtags(b, k_max);
  std::vector<RankCorrelationResult> curve;
  curve.reserve(ks.size());
  for (std::size_t k : ks) {
    auto la = std::span(full_a).first(std::min(k, full_a.size()));
    auto lb = std::span(full_b).first(std::min(k, full_b.size()));
    auto r = kendall_tau_b(la, lb);
    r.k = k;
    curve.push_back(r);
  }
  return curve;
}

}  // namespace streambias
