#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "streambias/baseline.hpp"
#include "streambias/bias.hpp"
#include "streambias/overlap.hpp"
#include "streambias/rank_correlation.hpp"
#include "streambias/timeseries.hpp"

namespace streambias {

/// Shortest round-trip decimal form of a double.
std::string format_real(double value);

/// `bin_index,bin_start_ts,count,z`; the z column is empty without a
/// normalized series.
void write_series_csv(std::ostream& out, const TimeSeries& series);
void write_series_csv(std::ostream& out, const TimeSeries& series, const NormalizedSeries& z);

/// `bin_index,streaming_z,band_mu,band_sigma,verdict`
void write_bias_csv(std::ostream& out, const BiasReport& report);

/// `k,tau_b,p_value`
void write_rank_correlation_csv(std::ostream& out,
                                std::span<const RankCorrelationResult> results);

/// `rank,hashtag,known_zeros,cumulative_known_zeros`
void write_known_zeros_csv(std::ostream& out, std::span<const KnownZeroEntry> curve);

/// `comparison,n,median,mean,std`; comparison is between_source or
/// between_time.
void write_overlap_header(std::ostream& out);
void write_overlap_row(std::ostream& out, const std::string& comparison,
                       const JaccardSummary& summary);

/// `k,mean_tau_b,std_tau_b` plus `observed_tau_b` when an observed curve is
/// given (same k order).
void write_baseline_csv(std::ostream& out, std::span<const BaselinePoint> band);
void write_baseline_csv(std::ostream& out, std::span<const BaselinePoint> band,
                        std::span<const RankCorrelationResult> observed);

}  // namespace streambias
