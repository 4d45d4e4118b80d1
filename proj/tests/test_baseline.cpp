#include <doctest.h>

#include "streambias/baseline.hpp"
#include "streambias/error.hpp"
#include "streambias/synth.hpp"

using namespace streambias;

namespace {

std::vector<TweetRecord> zipf_firehose(std::uint64_t seed) {
  Scenario sc;
  sc.n_hashtags = 200;
  sc.zipf_exponent = 1.0;
  sc.base_rate = 4000;
  sc.n_bins = 12;
  sc.seed = seed;
  return generate_firehose(sc);
}

}  // namespace

TEST_CASE("a sample of the whole firehose agrees perfectly") {
  const auto fh = zipf_firehose(1);
  const std::vector<std::size_t> ks{10, 50, 100};
  for (const auto& pt : random_sample_baseline(fh, fh.size(), 3, ks, 0)) {
    CHECK(pt.mean_tau_b == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pt.std_tau_b == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("a single draw has zero spread") {
  const auto fh = zipf_firehose(2);
  const std::vector<std::size_t> ks{10, 20};
  auto pts = random_sample_baseline(fh, 500, 1, ks, 4);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].k == 10);
  CHECK(pts[1].k == 20);
  for (const auto& pt : pts) CHECK(pt.std_tau_b == 0.0);
}

TEST_CASE("baseline is deterministic in the seed") {
  const auto fh = zipf_firehose(3);
  const std::vector<std::size_t> ks{10, 40};
  auto a = random_sample_baseline(fh, 400, 8, ks, 11);
  auto b = random_sample_baseline(fh, 400, 8, ks, 11);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].mean_tau_b == b[i].mean_tau_b);
    CHECK(a[i].std_tau_b == b[i].std_tau_b);
  }
}

TEST_CASE("agreement decays with k on Zipf data") {
  const auto fh = zipf_firehose(4);
  const std::vector<std::size_t> ks{10, 150};
  auto pts = random_sample_baseline(fh, fh.size() / 100, 20, ks, 0);
  CHECK(pts[0].mean_tau_b > pts[1].mean_tau_b);
}

TEST_CASE("baseline input validation") {
  const auto fh = zipf_firehose(5);
  const std::vector<std::size_t> ks{10};
  const std::vector<std::size_t> none;
  CHECK_THROWS_AS(random_sample_baseline(fh, fh.size() + 1, 2, ks, 0), ConfigError);
  CHECK_THROWS_AS(random_sample_baseline(fh, 10, 0, ks, 0), ConfigError);
  CHECK_THROWS_AS(random_sample_baseline(fh, 10, 2, none, 0), ConfigError);
}
