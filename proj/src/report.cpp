#include "streambias/report.hpp"

#include <charconv>
#include <ostream>

#include "streambias/error.hpp"

namespace streambias {

std::string format_real(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw Error("format_real: conversion failed");
  return std::string(buf, end);
}

namespace {

void series_rows(std::ostream& out, const TimeSeries& series, const NormalizedSeries* z) {
  out << "bin_index,bin_start_ts,count,z\n";
  for (std::size_t i = 0; i < series.counts.size(); ++i) {
    out << i << ',' << series.geometry.bin_begin(i) << ',' << series.counts[i] << ',';
    if (z != nullptr) out << format_real(z->z[i]);
    out << '\n';
  }
}

}  // namespace

void write_series_csv(std::ostream& out, const TimeSeries& series) {
  series_rows(out, series, nullptr);
}

void write_series_csv(std::ostream& out, const TimeSeries& series, const NormalizedSeries& z) {
  if (z.z.size() != series.counts.size()) {
    throw GeometryError("write_series_csv: normalized series length mismatch");
  }
  series_rows(out, series, &z);
}

void write_bias_csv(std::ostream& out, const BiasReport& report) {
  out << "bin_index,streaming_z,band_mu,band_sigma,verdict\n";
  for (std::size_t i = 0; i < report.verdicts.size(); ++i) {
    out << i << ',' << format_real(report.streaming_z.z[i]) << ','
        << format_real(report.band.mu_b[i]) << ',' << format_real(report.band.sigma_b[i]) << ','
        << to_string(report.verdicts[i]) << '\n';
  }
}

void write_rank_correlation_csv(std::ostream& out,
                                std::span<const RankCorrelationResult> results) {
  out << "k,tau_b,p_value\n";
  for (const auto& r : results) {
    out << r.k << ',' << format_real(r.tau_b) << ',' << format_real(r.p_value) << '\n';
  }
}

void write_known_zeros_csv(std::ostream& out, std::span<const KnownZeroEntry> curve) {
  out << "rank,hashtag,known_zeros,cumulative_known_zeros\n";
  for (const auto& e : curve) {
    out << e.rank << ',' << e.hashtag << ',' << e.known_zeros << ',' << e.cumulative << '\n';
  }
}

void write_overlap_header(std::ostream& out) { out << "comparison,n,median,mean,std\n"; }

void write_overlap_row(std::ostream& out, const std::string& comparison,
                       const JaccardSummary& summary) {
  out << comparison << ',' << summary.n_comparisons << ',' << format_real(summary.median) << ','
      << format_real(summary.mean) << ',' << format_real(summary.std) << '\n';
}

void write_baseline_csv(std::ostream& out, std::span<const BaselinePoint> band) {
  out << "k,mean_tau_b,std_tau_b\n";
  for (const auto& p : band) {
    out << p.k << ',' << format_real(p.mean_tau_b) << ',' << format_real(p.std_tau_b) << '\n';
  }
}

void write_baseline_csv(std::ostream& out, std::span<const BaselinePoint> band,
                        std::span<const RankCorrelationResult> observed) {
  if (observed.size() != band.size()) {
    throw Error("write_baseline_csv: observed curve length differs from the band");
  }
  out << "k,mean_tau_b,std_tau_b,observed_tau_b\n";
  for (std::size_t i = 0; i < band.size(); ++i) {
    out << band[i].k << ',' << format_real(band[i].mean_tau_b) << ','
        << format_real(band[i].std_tau_b) << ',' << format_real(observed[i].tau_b) << '\n';
  }
}

}  // namespace streambias
