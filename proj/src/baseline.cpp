#include "streambias/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

#include "parallel.hpp"
#include "streambias/error.hpp"
#include "streambias/rank_correlation.hpp"
#include "streambias/rng.hpp"

namespace streambias {

namespace {

std::vector<double> one_draw(std::span<const TweetRecord> firehose,
                             std::span<const std::uint32_t> all_indices,
                             const std::vector<HashtagCount>& truth, std::size_t sample_size,
                             std::span<const std::size_t> ks, std::uint64_t seed, std::size_t draw) {
  auto engine = make_engine(seed, RngDomain::Baseline, draw);
  std::vector<std::uint32_t> picked;
  picked.reserve(sample_size);
  std::sample(all_indices.begin(), all_indices.end(), std::back_inserter(picked), sample_size,
              engine);

  std::vector<TweetRecord> drawn;
  drawn.reserve(picked.size());
  for (auto i : picked) drawn.push_back(firehose[i]);
  const auto ranking = rank_hashtags(drawn);

  std::vector<double> taus;
  taus.reserve(ks.size());
  for (std::size_t k : ks) {
    auto a = std::span(truth).first(std::min(k, truth.size()));
    auto b = std::span(ranking).first(std::min(k, ranking.size()));
    taus.push_back(kendall_tau_b(a, b).tau_b);
  }
  return taus;
}

}  // namespace

std::vector<BaselinePoint> random_sample_baseline(std::span<const TweetRecord> firehose,
                                                  std::size_t sample_size, std::size_t n_draws,
                                                  std::span<const std::size_t> ks,
                                                  std::uint64_t seed, Execution execution) {
  if (sample_size > firehose.size()) {
    throw ConfigError("sample_size", "exceeds the firehose size (" +
                                         std::to_string(firehose.size()) + ")");
  }
  if (n_draws < 1) throw ConfigError("draws", "must be at least 1");
  if (ks.empty()) throw ConfigError("k", "empty k grid");
  if (firehose.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw ConfigError("firehose", "too many records");
  }

  const auto truth = rank_hashtags(firehose);
  std::vector<std::uint32_t> all_indices(firehose.size());
  std::iota(all_indices.begin(), all_indices.end(), 0u);

  std::vector<std::vector<double>> taus(n_draws);
  if (execution == Execution::Parallel) {
    detail::ExceptionSink sink;
    const auto n = static_cast<std::int64_t>(n_draws);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t d = 0; d < n; ++d) {
      const auto draw = static_cast<std::size_t>(d);
      sink.run(draw, [&] {
        taus[draw] = one_draw(firehose, all_indices, truth, sample_size, ks, seed, draw);
      });
    }
    sink.rethrow();
  } else {
    for (std::size_t d = 0; d < n_draws; ++d) {
      taus[d] = one_draw(firehose, all_indices, truth, sample_size, ks, seed, d);
    }
  }

  std::vector<BaselinePoint> out;
  out.reserve(ks.size());
  const double count = static_cast<double>(n_draws);
  for (std::size_t j = 0; j < ks.size(); ++j) {
    double sum = 0.0;
    for (const auto& row : taus) sum += row[j];
    const double mean = sum / count;
    double ss = 0.0;
    for (const auto& row : taus) ss += (row[j] - mean) * (row[j] - mean);
    out.push_back({ks[j], mean, std::sqrt(ss / count)});
  }
  return out;
}

}  // namespace streambias
