#include "streambias/bias.hpp"

#include <algorithm>

#include "parallel.hpp"
#include "streambias/error.hpp"

namespace streambias {

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::Unbiased: return "UNBIASED";
    case Verdict::OverRepresented: return "OVER";
    case Verdict::UnderRepresented: return "UNDER";
    case Verdict::NoData: return "NODATA";
  }
  return "NODATA";
}

void BandParams::validate() const {
  if (n_replicates < 2) throw ConfigError("replicates", "at least two replicates are required");
  if (!(sigma_multiplier > 0.0)) throw ConfigError("sigma", "must be positive");
  if (!(sigma_floor >= 0.0)) throw ConfigError("sigma_floor", "must be non-negative");
}

std::size_t BiasReport::count(Verdict v) const {
  return static_cast<std::size_t>(std::count(verdicts.begin(), verdicts.end(), v));
}

BiasReport detect_bias(const TimeSeries& streaming, const TimeSeries& sample,
                       const BandParams& params) {
  params.validate();
  const auto zeros = known_zero_bins(streaming, sample);  // also checks geometry
  const std::size_t n_bins = streaming.counts.size();

  BiasReport report;
  report.hashtag = streaming.hashtag;
  report.streaming_z = standard_score(streaming);

  const auto sample_z = standard_score(sample);
  if (sample_z.degenerate) {
    report.verdicts.assign(n_bins, Verdict::NoData);
    report.band.sigma_multiplier = params.sigma_multiplier;
    report.band.mu_b.assign(n_bins, 0.0);
    report.band.sigma_b.assign(n_bins, 0.0);
    return report;
  }

  // the sample's in-window occurrences, one per counted item, placed at the
  // start of their bin
  std::vector<Occurrence> occurrences;
  occurrences.reserve(sample.total());
  RecordId next_id = 0;
  for (std::size_t i = 0; i < n_bins; ++i) {
    const Timestamp ts = sample.geometry.bin_begin(i);
    for (std::uint64_t c = 0; c < sample.counts[i]; ++c) occurrences.push_back({next_id++, ts});
  }

  const auto replicates = bootstrap_replicates(occurrences, params.n_replicates, sample.geometry,
                                               params.seed, params.execution);
  report.band = build_band(replicates, params.sigma_multiplier, params.execution);

  report.verdicts.assign(n_bins, Verdict::Unbiased);
  for (std::size_t i = 0; i < n_bins; ++i) {
    const double spread = std::max(report.band.sigma_b[i], params.sigma_floor);
    const double upper = report.band.mu_b[i] + params.sigma_multiplier * spread;
    const double lower = report.band.mu_b[i] - params.sigma_multiplier * spread;
    const double z = report.streaming_z.z[i];
    if (z > upper) {
      report.verdicts[i] = Verdict::OverRepresented;
    } else if (z < lower) {
      report.verdicts[i] = Verdict::UnderRepresented;
    }
  }
  for (auto i : zeros) report.verdicts[i] = Verdict::NoData;
  return report;
}

std::vector<BiasReport> detect_bias(const HashtagIndex& streaming, const HashtagIndex& sample,
                                    std::span<const std::string> hashtags,
                                    const BinGeometry& geometry, const BandParams& params) {
  params.validate();
  geometry.validate();
  std::vector<BiasReport> reports(hashtags.size());

  if (params.execution == Execution::Serial) {
    for (std::size_t h = 0; h < hashtags.size(); ++h) {
      reports[h] = detect_bias(bin_counts(streaming, hashtags[h], geometry),
                               bin_counts(sample, hashtags[h], geometry), params);
    }
    return reports;
  }

  // parallel across hashtags, serial inside each one
  BandParams inner = params;
  inner.execution = Execution::Serial;
  detail::ExceptionSink sink;
  const auto n = static_cast<std::int64_t>(hashtags.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t hi = 0; hi < n; ++hi) {
    const auto h = static_cast<std::size_t>(hi);
    sink.run(h, [&] {
      reports[h] = detect_bias(bin_counts(streaming, hashtags[h], geometry),
                               bin_counts(sample, hashtags[h], geometry), inner);
    });
  }
  sink.rethrow();
  return reports;
}

}  // namespace streambias
