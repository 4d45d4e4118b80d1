#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "streambias/baseline.hpp"
#include "streambias/bias.hpp"
#include "streambias/error.hpp"
#include "streambias/overlap.hpp"
#include "streambias/rank_correlation.hpp"
#include "streambias/report.hpp"
#include "streambias/synth.hpp"
#include "streambias/timeseries.hpp"

namespace streambias::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public Error {
 public:
  using Error::Error;
};

// Buffers a report and writes it once it is complete.
void emit(const RunConfig& config, const std::string& body, std::ostream& out) {
  if (config.out == "-") {
    out << body;
    return;
  }
  std::ofstream file(config.out, std::ios::binary);
  if (!file) throw Error(config.out + ": cannot open for writing");
  file << body;
  if (!file) throw Error(config.out + ": write failed");
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(path.string() + ": cannot open for writing");
  file << body;
  if (!file) throw Error(path.string() + ": write failed");
}

std::pair<Timestamp, Timestamp> time_span(std::initializer_list<std::span<const TweetRecord>> streams) {
  auto lo = std::numeric_limits<Timestamp>::max();
  auto hi = std::numeric_limits<Timestamp>::min();
  for (auto s : streams) {
    for (const auto& r : s) {
      lo = std::min(lo, r.ts);
      hi = std::max(hi, r.ts);
    }
  }
  return {lo, hi};
}

BinGeometry resolve_geometry(const RunConfig& config, std::span<const TweetRecord> a,
                             std::span<const TweetRecord> b) {
  const std::span<const TweetRecord> both[] = {a, b};
  BinGeometry g = covering_geometry(both, config.bin_width);
  if (config.bin_start) {
    g.start = *config.bin_start;
    const auto [lo, hi] = time_span({a, b});
    g.n_bins = (lo <= hi && hi >= g.start)
                   ? static_cast<std::size_t>((hi - g.start) / config.bin_width) + 1
                   : 1;
  }
  if (config.n_bins) g.n_bins = *config.n_bins;
  g.validate();
  return g;
}

void run_bias(const RunConfig& config, std::ostream& out) {
  const auto streaming = parse_stream(fs::path(config.streaming), Source::Streaming);
  const auto sample = parse_stream(fs::path(config.sample), Source::Sample);
  const auto geometry = resolve_geometry(config, streaming, sample);
  const auto tag = normalize_hashtag(config.hashtag);
  if (tag.empty()) throw UsageError("--hashtag must not be empty");

  const auto s_series = bin_counts(build_index(streaming), tag, geometry);
  const auto r_series = bin_counts(build_index(sample), tag, geometry);

  BandParams params;
  params.n_replicates = config.replicates;
  params.sigma_multiplier = config.sigma;
  params.seed = config.seed.value_or(0);
  const auto report = detect_bias(s_series, r_series, params);

  std::ostringstream csv;
  write_bias_csv(csv, report);
  emit(config, csv.str(), out);

  if (!config.series_dir.empty()) {
    fs::create_directories(config.series_dir);
    std::ostringstream s_csv, r_csv;
    write_series_csv(s_csv, s_series, report.streaming_z);
    write_series_csv(r_csv, r_series, standard_score(r_series));
    write_file(fs::path(config.series_dir) / "streaming.csv", s_csv.str());
    write_file(fs::path(config.series_dir) / "sample.csv", r_csv.str());
  }
}

void run_rankcorr(const RunConfig& config, std::ostream& out) {
  const auto a = build_index(parse_stream(fs::path(config.a), Source::Streaming));
  const auto b = build_index(parse_stream(fs::path(config.b), Source::Sample));
  const auto ks = k_grid(config.k_step, config.k_max);
  if (ks.empty()) throw UsageError("--k-max is below --k-step; the k grid is empty");
  const auto curve = rank_correlation_curve(a, b, ks);
  std::ostringstream csv;
  write_rank_correlation_csv(csv, curve);
  emit(config, csv.str(), out);
}

void run_zeros(const RunConfig& config, std::ostream& out) {
  const auto streaming = parse_stream(fs::path(config.streaming), Source::Streaming);
  const auto sample = parse_stream(fs::path(config.sample), Source::Sample);
  const auto geometry = resolve_geometry(config, streaming, sample);
  const auto curve =
      cumulative_known_zeros(build_index(streaming), build_index(sample), config.top_k, geometry);
  std::ostringstream csv;
  write_known_zeros_csv(csv, curve);
  emit(config, csv.str(), out);
}

std::vector<std::vector<TweetRecord>> read_query_dir(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::vector<TweetRecord>> windows;
  windows.reserve(files.size());
  for (const auto& f : files) windows.push_back(parse_stream(f, Source::Streaming));
  return windows;
}

void run_overlap(const RunConfig& config, std::ostream& out) {
  const bool pair = !config.a.empty() || !config.b.empty();
  if (pair && (config.a.empty() || config.b.empty())) {
    throw UsageError("overlap needs both --a and --b for the between-source comparison");
  }
  if (!pair && config.query_dir.empty()) {
    throw UsageError("overlap needs --a/--b, --query-dir, or both");
  }

  std::vector<TweetRecord> a, b;
  if (pair) {
    a = parse_stream(fs::path(config.a), Source::Streaming);
    b = parse_stream(fs::path(config.b), Source::Streaming);
  }
  std::vector<std::vector<TweetRecord>> windows;
  if (!config.query_dir.empty()) windows = read_query_dir(config.query_dir);

  auto lo = std::numeric_limits<Timestamp>::max();
  auto hi = std::numeric_limits<Timestamp>::min();
  auto widen = [&](std::span<const TweetRecord> s) {
    const auto [l, h] = time_span({s});
    lo = std::min(lo, l);
    hi = std::max(hi, h);
  };
  widen(a);
  widen(b);
  for (const auto& w : windows) widen(w);

  WindowScheme scheme;
  scheme.period = config.period;
  scheme.duration = config.duration;
  scheme.start_ts = config.window_start.value_or(lo <= hi ? lo : 0);
  scheme.validate();

  std::ostringstream csv;
  write_overlap_header(csv);
  if (pair) {
    WindowScheme s = scheme;
    s.n_windows = config.n_windows.value_or(
        lo <= hi && hi >= s.start_ts
            ? static_cast<std::size_t>((hi - s.start_ts) / s.period) + 1
            : 0);
    write_overlap_row(csv, "between_source", between_source_summary(a, b, s));
  }
  if (!windows.empty() || !config.query_dir.empty()) {
    WindowScheme s = scheme;
    s.n_windows = config.n_windows.value_or(windows.size());
    write_overlap_row(csv, "between_time", between_time_summary(windows, s));
  }
  emit(config, csv.str(), out);
}

void run_synth(const RunConfig& config, std::ostream&) {
  auto scenario = load_scenario(config.scenario);
  if (config.seed) scenario.seed = *config.seed;
  const auto truth = simulate(scenario);

  const fs::path dir(config.out_dir);
  fs::create_directories(dir);
  write_stream(dir / "firehose.ndjson", truth.firehose);
  for (const auto& s : truth.streams) write_stream(dir / (s.name + ".ndjson"), s.records);
  std::ostringstream gt;
  write_ground_truth(gt, truth, scenario.seed);
  write_file(dir / "ground_truth.json", gt.str());
}

void run_baseline(const RunConfig& config, std::ostream& out) {
  const auto firehose = parse_stream(fs::path(config.firehose), Source::Firehose);
  std::vector<TweetRecord> sample;
  if (!config.sample.empty()) sample = parse_stream(fs::path(config.sample), Source::Sample);
  if (!config.sample_size && config.sample.empty()) {
    throw UsageError("baseline needs --sample-size or --sample");
  }
  const std::size_t size = config.sample_size.value_or(sample.size());
  const auto ks = k_grid(config.k_step, config.k_max);
  if (ks.empty()) throw UsageError("--k-max is below --k-step; the k grid is empty");

  const auto band = random_sample_baseline(firehose, size, config.draws, ks, config.seed.value_or(0));
  std::ostringstream csv;
  if (config.sample.empty()) {
    write_baseline_csv(csv, band);
  } else {
    const auto observed = rank_correlation_curve(build_index(firehose), build_index(sample), ks);
    write_baseline_csv(csv, band, observed);
  }
  emit(config, csv.str(), out);
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.subcommand) {
      case Subcommand::Bias: run_bias(config, out); break;
      case Subcommand::RankCorr: run_rankcorr(config, out); break;
      case Subcommand::Zeros: run_zeros(config, out); break;
      case Subcommand::Overlap: run_overlap(config, out); break;
      case Subcommand::Synth: run_synth(config, out); break;
      case Subcommand::Baseline: run_baseline(config, out); break;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detect sample bias in hashtag streams against a uniform reference sample",
               "streambias"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  RunConfig config;
  std::uint64_t seed = 0;
  std::size_t rankcorr_k_max = 50;
  std::size_t baseline_k_max = 450;

  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Seed for every random draw")->default_val(0);
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", config.out, "Output CSV path, - for stdout");
  };
  auto add_bins = [&](CLI::App* sub) {
    sub->add_option("--bin-width", config.bin_width, "Bin width in seconds")
        ->check(CLI::PositiveNumber);
    sub->add_option("--bin-start", config.bin_start,
                    "First bin start (epoch s); default: earliest record aligned to the width");
    sub->add_option("--n-bins", config.n_bins, "Number of bins; default: cover all records")
        ->check(CLI::PositiveNumber);
  };

  auto* bias = app.add_subcommand("bias", "Per-bin bias verdicts for one hashtag");
  bias->add_option("--streaming", config.streaming, "Query-filtered stream")->required();
  bias->add_option("--sample", config.sample, "Uniform reference sample")->required();
  bias->add_option("--hashtag", config.hashtag, "Hashtag to analyse")->required();
  add_bins(bias);
  bias->add_option("--replicates", config.replicates, "Bootstrap replicates")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  bias->add_option("--sigma", config.sigma, "Band half-width in standard deviations")
      ->check(CLI::PositiveNumber);
  bias->add_option("--series-dir", config.series_dir,
                   "Also write streaming.csv and sample.csv time series here");
  add_seed(bias);
  add_out(bias);

  auto* rankcorr = app.add_subcommand("rankcorr", "Kendall tau-b of top-k hashtag lists");
  rankcorr->add_option("--a", config.a, "First stream")->required();
  rankcorr->add_option("--b", config.b, "Second stream")->required();
  rankcorr->add_option("--k-max", rankcorr_k_max, "Largest k")
      ->check(CLI::PositiveNumber);
  rankcorr->add_option("--k-step", config.k_step, "k grid step (and smallest k)")
      ->check(CLI::PositiveNumber);
  add_seed(rankcorr);
  add_out(rankcorr);

  auto* zeros = app.add_subcommand("zeros", "Cumulative known zeros by hashtag popularity");
  zeros->add_option("--streaming", config.streaming, "Query-filtered stream")->required();
  zeros->add_option("--sample", config.sample, "Uniform reference sample")->required();
  zeros->add_option("--top-k", config.top_k, "Number of streaming hashtags")
      ->check(CLI::PositiveNumber);
  add_bins(zeros);
  add_seed(zeros);
  add_out(zeros);

  auto* overlap = app.add_subcommand("overlap", "Windowed Jaccard overlap of record ids");
  overlap->add_option("--a", config.a, "First stream (between-source)");
  overlap->add_option("--b", config.b, "Second stream (between-source)");
  overlap->add_option("--query-dir", config.query_dir,
                      "Directory of per-window query results, ordered by file name "
                      "(between-time)");
  overlap->add_option("--window-start", config.window_start,
                      "Start of the first window; default: earliest record");
  overlap->add_option("--period", config.period, "Seconds between window starts")
      ->check(CLI::PositiveNumber);
  overlap->add_option("--duration", config.duration, "Window length in seconds")
      ->check(CLI::PositiveNumber);
  overlap->add_option("--n-windows", config.n_windows,
                      "Window count; default: windows starting inside the data, or the file "
                      "count of --query-dir");
  add_seed(overlap);
  add_out(overlap);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic firehose and sampled streams");
  synth->add_option("--scenario", config.scenario, "Scenario file")->required();
  synth->add_option("--out-dir", config.out_dir, "Output directory")->required();
  auto* synth_seed =
      synth->add_option("--seed", seed, "Overrides the scenario seed")->default_val(0);

  auto* baseline = app.add_subcommand("baseline", "Random-sample tau-b band against a firehose");
  baseline->add_option("--firehose", config.firehose, "Complete stream")->required();
  baseline->add_option("--sample", config.sample,
                       "Observed sample; adds its tau-b curve and sets the default sample size");
  baseline->add_option("--sample-size", config.sample_size, "Records per random draw");
  baseline->add_option("--draws", config.draws, "Number of random draws")
      ->check(CLI::PositiveNumber);
  baseline->add_option("--k-max", baseline_k_max, "Largest k")
      ->check(CLI::PositiveNumber);
  baseline->add_option("--k-step", config.k_step, "k grid step (and smallest k)")
      ->check(CLI::PositiveNumber);
  add_seed(baseline);
  add_out(baseline);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (*bias) {
    config.subcommand = Subcommand::Bias;
  } else if (*rankcorr) {
    config.subcommand = Subcommand::RankCorr;
    config.k_max = rankcorr_k_max;
  } else if (*zeros) {
    config.subcommand = Subcommand::Zeros;
  } else if (*overlap) {
    config.subcommand = Subcommand::Overlap;
  } else if (*synth) {
    config.subcommand = Subcommand::Synth;
  } else {
    config.subcommand = Subcommand::Baseline;
    config.k_max = baseline_k_max;
  }
  if (config.subcommand == Subcommand::Synth) {
    if (synth_seed->count() > 0) config.seed = seed;
  } else {
    config.seed = seed;
  }
  return run(config, out, err);
}

}  // namespace streambias::cli
