// Serial reference paths against the OpenMP kernels.
#include <benchmark/benchmark.h>

#include <random>

#include "streambias/baseline.hpp"
#include "streambias/bias.hpp"
#include "streambias/bootstrap.hpp"
#include "streambias/rank_correlation.hpp"
#include "streambias/synth.hpp"

using namespace streambias;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

const GroundTruth& world() {
  static const GroundTruth w = [] {
    Scenario sc;
    sc.n_hashtags = 200;
    sc.zipf_exponent = 1.0;
    sc.base_rate = 20000;
    sc.n_bins = 168;
    sc.seed = 1;
    sc.samplers = {SamplerConfig::uniform(0.01, "sample"), SamplerConfig::uniform(0.01, "streaming")};
    return simulate(sc);
  }();
  return w;
}

void BM_Bootstrap(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<Occurrence> occ;
  for (RecordId i = 0; i < 20000; ++i) occ.push_back({i, static_cast<Timestamp>(rng() % (168 * 3600))});
  std::sort(occ.begin(), occ.end());
  const BinGeometry g{0, 3600, 168};
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_replicates(occ, 100, g, 0, mode(state)));
}

void BM_Band(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  std::vector<NormalizedSeries> reps(100);
  for (auto& r : reps) {
    r.z.resize(4096);
    for (auto& z : r.z) z = nd(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(build_band(reps, 3.0, mode(state)));
}

void BM_DetectAll(benchmark::State& state) {
  const auto& w = world();
  const auto s = build_index(w.streams[1].records), r = build_index(w.streams[0].records);
  std::vector<std::string> tags;
  for (std::size_t k = 1; k <= 200; ++k) tags.push_back(hashtag_name(k, 200));
  BandParams params;
  params.execution = mode(state);
  const BinGeometry g{0, 3600, 168};
  for (auto _ : state) benchmark::DoNotOptimize(detect_bias(s, r, tags, g, params));
}

void BM_KnownZeros(benchmark::State& state) {
  const auto& w = world();
  const auto s = build_index(w.streams[1].records), r = build_index(w.streams[0].records);
  const BinGeometry g{0, 3600, 168};
  for (auto _ : state) benchmark::DoNotOptimize(cumulative_known_zeros(s, r, 200, g, mode(state)));
}

void BM_Baseline(benchmark::State& state) {
  const auto& w = world();
  const auto ks = k_grid(10, 100);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        random_sample_baseline(w.firehose, w.streams[0].records.size(), 20, ks, 0, mode(state)));
  }
}

}  // namespace

// Arg 0 = serial reference, 1 = OpenMP
BENCHMARK(BM_Bootstrap)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Band)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DetectAll)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KnownZeros)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Baseline)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
