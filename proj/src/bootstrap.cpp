#include "streambias/bootstrap.hpp"

#include <cmath>
#include <random>

#include "streambias/error.hpp"
#include "streambias/rng.hpp"

namespace streambias {

namespace {

constexpr std::int64_t kOutside = -1;

std::vector<NormalizedSeries> replicates_parallel(std::span<const Occurrence> occurrences,
                                                  std::size_t n_replicates,
                                                  const BinGeometry& geometry,
                                                  std::uint64_t seed) {
  const std::size_t n = occurrences.size();
  std::vector<std::int64_t> bin_of(n, kOutside);
  for (std::size_t i = 0; i < n; ++i) {
    if (auto b = geometry.bin_of(occurrences[i].ts)) bin_of[i] = static_cast<std::int64_t>(*b);
  }

  std::vector<NormalizedSeries> out(n_replicates);
  const auto total = static_cast<std::int64_t>(n_replicates);
#pragma omp parallel
  {
    std::vector<std::uint64_t> counts(geometry.n_bins);
#pragma omp for schedule(static)
    for (std::int64_t r = 0; r < total; ++r) {
      auto engine = make_engine(seed, RngDomain::Bootstrap, static_cast<std::uint64_t>(r));
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      std::fill(counts.begin(), counts.end(), 0);
      for (std::size_t draw = 0; draw < n; ++draw) {
        const auto b = bin_of[pick(engine)];
        if (b != kOutside) ++counts[static_cast<std::size_t>(b)];
      }
      out[static_cast<std::size_t>(r)] = standard_score(std::span<const std::uint64_t>(counts));
    }
  }
  return out;
}

// Reference path: materializes every resample and reuses the public binning.
std::vector<NormalizedSeries> replicates_serial(std::span<const Occurrence> occurrences,
                                                std::size_t n_replicates,
                                                const BinGeometry& geometry, std::uint64_t seed) {
  std::vector<NormalizedSeries> out;
  out.reserve(n_replicates);
  std::vector<Occurrence> resample(occurrences.size());
  for (std::size_t r = 0; r < n_replicates; ++r) {
    auto engine = make_engine(seed, RngDomain::Bootstrap, r);
    std::uniform_int_distribution<std::size_t> pick(0, occurrences.size() - 1);
    for (auto& slot : resample) slot = occurrences[pick(engine)];
    out.push_back(standard_score(bin_counts(resample, geometry)));
  }
  return out;
}

}  // namespace

std::vector<NormalizedSeries> bootstrap_replicates(std::span<const Occurrence> occurrences,
                                                   std::size_t n_replicates,
                                                   const BinGeometry& geometry, std::uint64_t seed,
                                                   Execution execution) {
  geometry.validate();
  if (occurrences.empty()) {
    throw InsufficientDataError("bootstrap_replicates: no occurrences to resample");
  }
  if (n_replicates < 1) throw ConfigError("n_replicates", "must be at least 1");
  return execution == Execution::Parallel
             ? replicates_parallel(occurrences, n_replicates, geometry, seed)
             : replicates_serial(occurrences, n_replicates, geometry, seed);
}

BootstrapBand build_band(std::span<const NormalizedSeries> replicates, double sigma_multiplier,
                         Execution execution) {
  if (replicates.size() < 2) {
    throw InsufficientDataError("build_band: at least two replicates are required");
  }
  if (!(sigma_multiplier > 0.0)) throw ConfigError("sigma_multiplier", "must be positive");
  const std::size_t n_bins = replicates.front().z.size();
  for (const auto& rep : replicates) {
    if (rep.z.size() != n_bins) throw GeometryError("build_band: replicate length mismatch");
  }

  BootstrapBand band;
  band.n_replicates = replicates.size();
  band.sigma_multiplier = sigma_multiplier;
  band.mu_b.assign(n_bins, 0.0);
  band.sigma_b.assign(n_bins, 0.0);
  const double count = static_cast<double>(replicates.size());

  if (execution == Execution::Parallel) {
    const auto bins = static_cast<std::int64_t>(n_bins);
#pragma omp parallel for schedule(static)
    for (std::int64_t bi = 0; bi < bins; ++bi) {
      const auto i = static_cast<std::size_t>(bi);
      double sum = 0.0;
      for (const auto& rep : replicates) sum += rep.z[i];
      const double mu = sum / count;
      double ss = 0.0;
      for (const auto& rep : replicates) ss += (rep.z[i] - mu) * (rep.z[i] - mu);
      band.mu_b[i] = mu;
      band.sigma_b[i] = std::sqrt(ss / (count - 1.0));
    }
  } else {
    // row-major sweep, one replicate at a time
    std::vector<double> ss(n_bins, 0.0);
    for (const auto& rep : replicates) {
      for (std::size_t i = 0; i < n_bins; ++i) band.mu_b[i] += rep.z[i];
    }
    for (auto& m : band.mu_b) m /= count;
    for (const auto& rep : replicates) {
      for (std::size_t i = 0; i < n_bins; ++i) {
        const double d = rep.z[i] - band.mu_b[i];
        ss[i] += d * d;
      }
    }
    for (std::size_t i = 0; i < n_bins; ++i) band.sigma_b[i] = std::sqrt(ss[i] / (count - 1.0));
  }
  return band;
}

}  // namespace streambias
