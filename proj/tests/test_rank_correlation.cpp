#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "streambias/error.hpp"
#include "streambias/rank_correlation.hpp"

using namespace streambias;

namespace {

std::vector<HashtagCount> ranked(const std::vector<std::pair<std::string, std::size_t>>& items) {
  std::vector<HashtagCount> out;
  for (const auto& [t, c] : items) out.push_back({t, c});
  return out;
}

void check_against_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  const auto c = oracle::enumerate_pairs(x, y);
  const auto r = kendall_tau_b(x, y);
  CHECK(static_cast<std::int64_t>(r.n_concordant) == c.concordant);
  CHECK(static_cast<std::int64_t>(r.n_discordant) == c.discordant);
  CHECK(r.tau_b == oracle::tau_b(c));
  CHECK(std::abs(r.p_value - oracle::tau_b_p_value(x, y, c)) <= 1e-12);
}

}  // namespace

TEST_CASE("identical rankings give tau 1") {
  std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  auto r = kendall_tau_b(x, x);
  CHECK(r.tau_b == 1.0);
  CHECK(r.n_discordant == 0);
  CHECK(r.n_concordant == 45);
}

TEST_CASE("reversed rankings give tau -1") {
  std::vector<double> x{1, 2, 3, 4, 5, 6, 7}, y{7, 6, 5, 4, 3, 2, 1};
  CHECK(kendall_tau_b(x, y).tau_b == -1.0);
}

TEST_CASE("one swap with and without injected ties matches the pair enumeration") {
  check_against_oracle({1, 2, 3, 4}, {1, 3, 2, 4});
  check_against_oracle({1, 2, 2, 4}, {1, 3, 2, 4});
  check_against_oracle({1, 2, 3, 4}, {1, 3, 3, 4});
  check_against_oracle({1, 1, 3, 3}, {1, 3, 3, 4});
}

TEST_CASE("agrees with an external reference implementation") {
  // scipy.stats.kendalltau(x, y, method='asymptotic')
  struct Case {
    std::vector<double> x, y;
    double tau, p;
  };
  const Case cases[] = {
      {{1, 2, 3, 4}, {1, 3, 2, 4}, 0.6666666666666669, 0.17423138824802498},
      {{1, 1, 2, 3, 3, 4}, {2, 1, 1, 3, 4, 4}, 0.6923076923076924, 0.06958922627547405},
      {{4, 3, 3, 2, 1, 1, 5}, {1, 2, 2, 4, 4, 3, 3}, -0.4866642633922876, 0.15276006187089938},
  };
  for (const auto& c : cases) {
    auto r = kendall_tau_b(c.x, c.y);
    CHECK(r.tau_b == doctest::Approx(c.tau).epsilon(1e-12));
    CHECK(r.p_value == doctest::Approx(c.p).epsilon(1e-10));
  }
}

TEST_CASE("random tied data against the oracle, and symmetry") {
  std::mt19937_64 rng(1234);
  for (int round = 0; round < 3000; ++round) {
    const std::size_t n = 2 + rng() % 30;
    const int alphabet = 1 + static_cast<int>(rng() % 8);
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = static_cast<double>(rng() % alphabet);
    for (auto& v : y) v = static_cast<double>(rng() % alphabet);
    const auto cx = oracle::enumerate_pairs(x, y);
    if (cx.tied_x == cx.n0 || cx.tied_y == cx.n0) {
      CHECK_THROWS_AS(kendall_tau_b(x, y), InsufficientDataError);
      continue;
    }
    check_against_oracle(x, y);
    CHECK(kendall_tau_b(x, y).tau_b == kendall_tau_b(y, x).tau_b);
    auto r = kendall_tau_b(x, y);
    CHECK(std::abs(r.tau_b) <= 1.0);
    CHECK(r.p_value >= 0.0);
    CHECK(r.p_value <= 1.0);
  }
}

TEST_CASE("undefined tau is an error") {
  CHECK_THROWS_AS(kendall_tau_b(std::vector<double>{1}, std::vector<double>{1}), InsufficientDataError);
  CHECK_THROWS_AS(kendall_tau_b(std::vector<double>{}, std::vector<double>{}), InsufficientDataError);
  CHECK_THROWS_AS(kendall_tau_b(std::vector<double>{2, 2, 2}, std::vector<double>{1, 2, 3}),
                  InsufficientDataError);
  CHECK_THROWS_AS(kendall_tau_b(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}),
                  InsufficientDataError);
}

TEST_CASE("ranked lists: equal counts tie, missing items go to rank size+1") {
  auto a = ranked({{"x", 9}, {"y", 5}, {"z", 5}});
  auto b = ranked({{"y", 7}, {"x", 3}, {"w", 1}});
  // union sorted by name: w, x, y, z
  // ranks in a: w->4 (absent), x->1, y->2, z->2
  // ranks in b: w->3, x->2, y->1, z->4 (absent)
  const std::vector<double> ra{4, 1, 2, 2}, rb{3, 2, 1, 4};
  const auto c = oracle::enumerate_pairs(ra, rb);
  auto r = kendall_tau_b(a, b);
  CHECK(r.tau_b == oracle::tau_b(c));
  CHECK(r.n_items == 4);
  CHECK(r.k == 3);
}

TEST_CASE("ranked lists: identical top-k lists") {
  auto a = ranked({{"a", 10}, {"b", 8}, {"c", 3}});
  CHECK(kendall_tau_b(a, a).tau_b == 1.0);
}

TEST_CASE("k_grid") {
  CHECK(k_grid(10, 50) == std::vector<std::size_t>{10, 20, 30, 40, 50});
  CHECK(k_grid(10, 55) == std::vector<std::size_t>{10, 20, 30, 40, 50});
  CHECK(k_grid(10, 5).empty());
  CHECK_THROWS_AS(k_grid(0, 5), ConfigError);
}

TEST_CASE("rank_correlation_curve over two indexes") {
  std::vector<TweetRecord> a, b;
  RecordId id = 0;
  for (int t = 0; t < 30; ++t) {
    for (int i = 0; i <= 30 - t; ++i) a.push_back({id++, 0, {"t" + std::to_string(100 + t)}, Source::Firehose});
    for (int i = 0; i <= (30 - t) / 2; ++i) b.push_back({id++, 0, {"t" + std::to_string(100 + t)}, Source::Sample});
  }
  const std::vector<std::size_t> ks{5, 10, 20};
  const auto ia = build_index(a), ib = build_index(b);
  auto curve = rank_correlation_curve(ia, ib, ks);
  REQUIRE(curve.size() == 3);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    CHECK(curve[i].k == ks[i]);
    CHECK(curve[i].tau_b == kendall_tau_b(top_k_hashtags(ia, ks[i]), top_k_hashtags(ib, ks[i])).tau_b);
    CHECK(curve[i].tau_b > 0.0);  // same popularity order, b only adds ties
  }
}
