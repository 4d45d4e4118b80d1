#include <doctest.h>

#include <random>

#include "streambias/bias.hpp"
#include "streambias/error.hpp"
#include "streambias/synth.hpp"

using namespace streambias;

namespace {

TimeSeries series(std::vector<std::uint64_t> counts, const std::string& tag = "x") {
  BinGeometry g{0, 3600, counts.size()};
  return {tag, g, std::move(counts)};
}

std::vector<std::uint64_t> trend_counts(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double mean = 40.0 + 30.0 * std::sin(static_cast<double>(i) / 3.0) + (i % 11 == 0 ? 80.0 : 0.0);
    c[i] = std::poisson_distribution<std::uint64_t>(mean)(rng);
  }
  return c;
}

}  // namespace

TEST_CASE("verdict spelling") {
  CHECK(to_string(Verdict::Unbiased) == "UNBIASED");
  CHECK(to_string(Verdict::OverRepresented) == "OVER");
  CHECK(to_string(Verdict::UnderRepresented) == "UNDER");
  CHECK(to_string(Verdict::NoData) == "NODATA");
}

TEST_CASE("streaming identical to the sample is unbiased everywhere") {
  auto counts = trend_counts(48, 3);
  auto report = detect_bias(series(counts), series(counts));
  CHECK(report.verdicts.size() == 48);
  CHECK(report.count(Verdict::Unbiased) == 48);
  CHECK(report.band.n_replicates == 100);
}

TEST_CASE("an all-zero sample yields NoData everywhere") {
  auto report = detect_bias(series({3, 0, 5, 1}), series({0, 0, 0, 0}));
  CHECK(report.count(Verdict::NoData) == 4);
  CHECK(report.band.mu_b.size() == 4);
}

TEST_CASE("a constant sample is degenerate and yields NoData") {
  auto report = detect_bias(series({3, 0, 5, 1}), series({2, 2, 2, 2}));
  CHECK(report.count(Verdict::NoData) == 4);
}

TEST_CASE("known zeros are NoData") {
  auto sample = trend_counts(24, 5);
  auto streaming = sample;
  sample[4] = 0;
  streaming[4] = 9;
  auto report = detect_bias(series(streaming), series(sample));
  CHECK(report.verdicts[4] == Verdict::NoData);
}

TEST_CASE("zero-width band bins use the sigma floor") {
  // every resample of {0, 5} keeps z = {-1, 1}, so the band has no spread
  auto tight = detect_bias(series({0, 5}), series({0, 5}));
  CHECK(tight.band.sigma_b == std::vector<double>{0.0, 0.0});
  CHECK(tight.count(Verdict::Unbiased) == 2);

  auto flat = detect_bias(series({0, 0}), series({0, 5}));
  CHECK(flat.verdicts[0] == Verdict::OverRepresented);
  CHECK(flat.verdicts[1] == Verdict::UnderRepresented);
}

TEST_CASE("injected 4x over-representation on bins 10-14 is flagged") {
  Scenario sc;
  sc.n_hashtags = 1;
  sc.zipf_exponent = 1.0;
  sc.base_rate = 2000;
  sc.n_bins = 48;
  sc.seed = 21;
  sc.samplers = {SamplerConfig::uniform(0.1, "sample"),
                 SamplerConfig::bias_schedule(0.1, {{"h1", 10, 15, 4.0}}, "streaming")};
  const auto truth = simulate(sc);
  CHECK(truth.streams[1].biased_bins.at("h1") == std::vector<std::size_t>{10, 11, 12, 13, 14});

  const auto g = sc.geometry();
  auto s = bin_counts(build_index(truth.streams[1].records), "h1", g);
  auto r = bin_counts(build_index(truth.streams[0].records), "h1", g);
  auto report = detect_bias(s, r);
  for (std::size_t b = 10; b < 15; ++b) CHECK(report.verdicts[b] == Verdict::OverRepresented);
}

TEST_CASE("verdicts are invariant to scaling the streaming counts") {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 20; ++round) {
    auto sample = trend_counts(36, rng());
    auto streaming = trend_counts(36, rng());
    for (auto& c : streaming) c *= 2;
    auto base = detect_bias(series(streaming), series(sample)).verdicts;
    for (std::uint64_t num : {1u, 4u, 20u}) {  // c = 0.5, 2, 10
      auto scaled = streaming;
      for (auto& c : scaled) c = c * num / 2;
      CHECK(detect_bias(series(scaled), series(sample)).verdicts == base);
    }
  }
}

TEST_CASE("detect_bias input validation") {
  auto a = series({1, 2, 3});
  CHECK_THROWS_AS(detect_bias(a, series({1, 2})), GeometryError);
  BandParams p;
  p.n_replicates = 1;
  CHECK_THROWS_AS(detect_bias(a, a, p), ConfigError);
  p.n_replicates = 10;
  p.sigma_multiplier = -1;
  CHECK_THROWS_AS(detect_bias(a, a, p), ConfigError);
}

TEST_CASE("batch detection matches standalone calls") {
  std::mt19937_64 rng(2);
  std::vector<TweetRecord> s, r;
  for (RecordId i = 0; i < 4000; ++i) {
    TweetRecord rec{i, static_cast<Timestamp>(rng() % (3600 * 24)), {"t" + std::to_string(rng() % 5)}, Source::Firehose};
    s.push_back(rec);
    if (rng() % 4 == 0) r.push_back(rec);
  }
  const auto si = build_index(s), ri = build_index(r);
  const BinGeometry g{0, 3600, 24};
  const std::vector<std::string> tags{"t0", "t3", "missing"};
  auto batch = detect_bias(si, ri, tags, g);
  REQUIRE(batch.size() == 3);
  for (std::size_t i = 0; i < tags.size(); ++i) {
    auto single = detect_bias(bin_counts(si, tags[i], g), bin_counts(ri, tags[i], g));
    CHECK(batch[i].verdicts == single.verdicts);
    CHECK(batch[i].band == single.band);
    CHECK(batch[i].hashtag == tags[i]);
  }
}
