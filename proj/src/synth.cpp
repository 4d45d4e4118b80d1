#include "streambias/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "streambias/error.hpp"
#include "streambias/rng.hpp"

namespace streambias {

namespace {

using json = nlohmann::json;

bool safe_name(const std::string& name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c == '.';
  }) && name != "." && name != "..";
}

void check_interval(std::size_t start, std::size_t end, std::size_t n_bins,
                    const std::string& field) {
  if (start >= end) throw ConfigError(field, "start_bin must be below end_bin");
  if (end > n_bins) throw ConfigError(field, "interval exceeds n_bins");
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// ---- scenario file helpers ------------------------------------------------

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ConfigError(where.empty() ? key : where + "." + key, "unknown key");
    }
  }
}

const json& require(const json& obj, const char* key, const std::string& field) {
  if (!obj.contains(key)) throw ConfigError(field, "missing");
  return obj.at(key);
}

std::uint64_t as_count(const json& v, const std::string& field) {
  if (!v.is_number_unsigned()) throw ConfigError(field, "must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::int64_t as_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigError(field, "must be an integer");
  return v.get<std::int64_t>();
}

double as_real(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "must be a number");
  return v.get<double>();
}

std::string as_string(const json& v, const std::string& field) {
  if (!v.is_string()) throw ConfigError(field, "must be a string");
  return v.get<std::string>();
}

const json& as_array(const json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError(field, "must be an array");
  return v;
}

const json& as_object(const json& v, const std::string& field) {
  if (!v.is_object()) throw ConfigError(field, "must be an object");
  return v;
}

SamplerKind parse_kind(const std::string& s, const std::string& field) {
  if (s == "uniform") return SamplerKind::Uniform;
  if (s == "bias_schedule") return SamplerKind::BiasSchedule;
  if (s == "rate_cap_head") return SamplerKind::RateCapHead;
  throw ConfigError(field, "unknown sampler kind '" + s + "'");
}

SamplerConfig parse_sampler(const json& obj, std::size_t j) {
  const std::string at = "samplers[" + std::to_string(j) + "]";
  as_object(obj, at);
  reject_unknown(obj, {"name", "kind", "p", "schedule", "cap"}, at);
  SamplerConfig cfg;
  cfg.kind = parse_kind(as_string(require(obj, "kind", at + ".kind"), at + ".kind"), at + ".kind");
  cfg.name = obj.contains("name") ? as_string(obj["name"], at + ".name")
                                  : "sampler" + std::to_string(j);
  if (obj.contains("p")) cfg.p = as_real(obj["p"], at + ".p");
  if (obj.contains("cap")) cfg.cap = as_count(obj["cap"], at + ".cap");
  if (cfg.kind == SamplerKind::RateCapHead && !obj.contains("cap")) {
    throw ConfigError(at + ".cap", "missing");
  }
  if (cfg.kind != SamplerKind::RateCapHead && !obj.contains("p")) {
    throw ConfigError(at + ".p", "missing");
  }
  if (obj.contains("schedule")) {
    const auto& entries = as_array(obj["schedule"], at + ".schedule");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string et = at + ".schedule[" + std::to_string(i) + "]";
      const auto& e = as_object(entries[i], et);
      reject_unknown(e, {"hashtag", "start_bin", "end_bin", "g"}, et);
      cfg.schedule.push_back(
          {normalize_hashtag(as_string(require(e, "hashtag", et + ".hashtag"), et + ".hashtag")),
           as_count(require(e, "start_bin", et + ".start_bin"), et + ".start_bin"),
           as_count(require(e, "end_bin", et + ".end_bin"), et + ".end_bin"),
           as_real(require(e, "g", et + ".g"), et + ".g")});
    }
  }
  return cfg;
}

}  // namespace

std::string_view to_string(SamplerKind kind) noexcept {
  switch (kind) {
    case SamplerKind::Uniform: return "uniform";
    case SamplerKind::BiasSchedule: return "bias_schedule";
    case SamplerKind::RateCapHead: return "rate_cap_head";
  }
  return "uniform";
}

SamplerConfig SamplerConfig::uniform(double p, std::string name) {
  SamplerConfig c;
  c.kind = SamplerKind::Uniform;
  c.p = p;
  c.name = std::move(name);
  return c;
}

SamplerConfig SamplerConfig::bias_schedule(double p, std::vector<ScheduleEntry> schedule,
                                           std::string name) {
  SamplerConfig c;
  c.kind = SamplerKind::BiasSchedule;
  c.p = p;
  c.schedule = std::move(schedule);
  c.name = std::move(name);
  return c;
}

SamplerConfig SamplerConfig::rate_cap_head(std::uint64_t cap, std::string name) {
  SamplerConfig c;
  c.kind = SamplerKind::RateCapHead;
  c.cap = cap;
  c.name = std::move(name);
  return c;
}

void SamplerConfig::validate(const BinGeometry& geometry, const std::string& field_prefix) const {
  if (!safe_name(name)) {
    throw ConfigError(field_prefix + ".name", "must be non-empty and use [A-Za-z0-9_.-]");
  }
  if (kind == SamplerKind::RateCapHead) return;
  if (!(p > 0.0 && p <= 1.0)) throw ConfigError(field_prefix + ".p", "must lie in (0, 1]");
  if (kind == SamplerKind::Uniform) return;

  std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> spans;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const auto& e = schedule[i];
    const std::string at = field_prefix + ".schedule[" + std::to_string(i) + "]";
    if (e.hashtag.empty()) throw ConfigError(at + ".hashtag", "must not be empty");
    check_interval(e.start_bin, e.end_bin, geometry.n_bins, at);
    if (!(e.g >= 0.0) || !std::isfinite(e.g)) throw ConfigError(at + ".g", "must be >= 0");
    if (p * e.g > 1.0) throw ConfigError(at + ".g", "p * g exceeds 1");
    for (const auto& [s, t] : spans[e.hashtag]) {
      if (e.start_bin < t && s < e.end_bin) {
        throw ConfigError(at, "overlaps an earlier entry for '" + e.hashtag + "'");
      }
    }
    spans[e.hashtag].emplace_back(e.start_bin, e.end_bin);
  }
}

void Scenario::validate() const {
  if (n_hashtags < 1) throw ConfigError("n_hashtags", "must be at least 1");
  if (!(zipf_exponent > 0.0) || !std::isfinite(zipf_exponent)) {
    throw ConfigError("zipf_exponent", "must be positive");
  }
  if (!(base_rate >= 0.0) || !std::isfinite(base_rate)) {
    throw ConfigError("base_rate", "must be non-negative");
  }
  if (n_bins < 1) throw ConfigError("n_bins", "must be at least 1");
  if (bin_width < 1) throw ConfigError("bin_width", "must be at least 1");
  if (!(delta > 0.0)) throw ConfigError("delta", "must be positive");
  for (std::size_t i = 0; i < spikes.size(); ++i) {
    const auto& s = spikes[i];
    const std::string at = "spikes[" + std::to_string(i) + "]";
    bool known = false;
    for (std::size_t r = 1; r <= n_hashtags && !known; ++r) known = hashtag_name(r, n_hashtags) == s.hashtag;
    if (!known) throw ConfigError(at + ".hashtag", "unknown hashtag '" + s.hashtag + "'");
    check_interval(s.start_bin, s.end_bin, n_bins, at);
    if (!(s.multiplier > 0.0) || !std::isfinite(s.multiplier)) {
      throw ConfigError(at + ".multiplier", "must be positive");
    }
  }
  std::set<std::string> names;
  for (std::size_t j = 0; j < samplers.size(); ++j) {
    const std::string at = "samplers[" + std::to_string(j) + "]";
    samplers[j].validate(geometry(), at);
    if (samplers[j].name == "firehose" || samplers[j].name == "ground_truth") {
      throw ConfigError(at + ".name", "reserved name");
    }
    if (!names.insert(samplers[j].name).second) throw ConfigError(at + ".name", "duplicate name");
  }
}

std::string hashtag_name(std::size_t rank, std::size_t n_hashtags) {
  const auto width = std::to_string(n_hashtags).size();
  auto digits = std::to_string(rank);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return "h" + digits;
}

std::vector<double> zipf_weights(std::size_t n, double exponent) {
  std::vector<double> w(n);
  double total = 0.0;
  for (std::size_t r = 1; r <= n; ++r) {
    w[r - 1] = std::pow(static_cast<double>(r), -exponent);
    total += w[r - 1];
  }
  for (auto& v : w) v /= total;
  return w;
}

std::vector<TweetRecord> generate_firehose(const Scenario& scenario) {
  scenario.validate();
  const auto weights = zipf_weights(scenario.n_hashtags, scenario.zipf_exponent);
  std::vector<std::string> names(scenario.n_hashtags);
  std::unordered_map<std::string, std::size_t> rank_of;
  for (std::size_t r = 0; r < scenario.n_hashtags; ++r) {
    names[r] = hashtag_name(r + 1, scenario.n_hashtags);
    rank_of[names[r]] = r;
  }

  // rate multiplier per (hashtag, bin), row-major by hashtag
  std::vector<double> boost(scenario.n_hashtags * scenario.n_bins, 1.0);
  for (const auto& s : scenario.spikes) {
    const auto r = rank_of.at(s.hashtag);
    for (auto b = s.start_bin; b < s.end_bin; ++b) boost[r * scenario.n_bins + b] *= s.multiplier;
  }

  auto engine = make_engine(scenario.seed, RngDomain::Firehose, 0);
  std::uniform_int_distribution<std::int64_t> offset(0, scenario.bin_width - 1);

  std::vector<TweetRecord> records;
  records.reserve(static_cast<std::size_t>(scenario.base_rate * static_cast<double>(scenario.n_bins)));
  std::vector<std::pair<Timestamp, std::size_t>> draws;  // (ts, hashtag rank)
  RecordId next_id = 0;
  const BinGeometry geom = scenario.geometry();
  for (std::size_t b = 0; b < scenario.n_bins; ++b) {
    draws.clear();
    const Timestamp begin = geom.bin_begin(b);
    for (std::size_t r = 0; r < scenario.n_hashtags; ++r) {
      const double mean = scenario.base_rate * weights[r] * boost[r * scenario.n_bins + b];
      if (mean <= 0.0) continue;
      std::poisson_distribution<std::uint64_t> poisson(mean);
      const auto count = poisson(engine);
      for (std::uint64_t c = 0; c < count; ++c) draws.emplace_back(begin + offset(engine), r);
    }
    std::stable_sort(draws.begin(), draws.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [ts, r] : draws) {
      records.push_back({next_id++, ts, {names[r]}, Source::Firehose});
    }
  }
  return records;
}

SampledStream apply_sampler(std::span<const TweetRecord> firehose, const SamplerConfig& config,
                            const BinGeometry& geometry, std::uint64_t seed, std::uint64_t stream,
                            double delta) {
  geometry.validate();
  config.validate(geometry);
  if (!(delta > 0.0)) throw ConfigError("delta", "must be positive");

  SampledStream out;
  out.name = config.name;
  out.kind = config.kind;
  std::vector<char> keep(firehose.size(), 0);
  auto engine = make_engine(seed, RngDomain::Sampler, stream);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  switch (config.kind) {
    case SamplerKind::Uniform: {
      for (std::size_t i = 0; i < firehose.size(); ++i) keep[i] = unit(engine) < config.p;
      break;
    }
    case SamplerKind::BiasSchedule: {
      std::unordered_map<std::string, std::vector<double>> g_of;
      for (const auto& e : config.schedule) {
        auto& per_bin = g_of.try_emplace(e.hashtag, geometry.n_bins, 1.0).first->second;
        for (auto b = e.start_bin; b < e.end_bin; ++b) per_bin[b] = e.g;
      }
      for (std::size_t i = 0; i < firehose.size(); ++i) {
        const auto& rec = firehose[i];
        double g = 1.0;
        if (auto bin = geometry.bin_of(rec.ts)) {
          bool first = true;
          for (const auto& tag : rec.tags) {
            auto it = g_of.find(tag);
            const double tg = it == g_of.end() ? 1.0 : it->second[*bin];
            g = first ? tg : std::max(g, tg);
            first = false;
          }
        }
        keep[i] = unit(engine) < config.p * g;
      }
      break;
    }
    case SamplerKind::RateCapHead: {
      struct Slot {
        std::int64_t bin;
        Timestamp ts;
        RecordId id;
        std::size_t index;
      };
      std::vector<Slot> slots(firehose.size());
      for (std::size_t i = 0; i < firehose.size(); ++i) {
        const auto& rec = firehose[i];
        slots[i] = {floor_div(rec.ts - geometry.start, geometry.width), rec.ts, rec.id, i};
      }
      std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
        return std::tie(a.bin, a.ts, a.id, a.index) < std::tie(b.bin, b.ts, b.id, b.index);
      });
      std::uint64_t taken = 0;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        if (i == 0 || slots[i].bin != slots[i - 1].bin) taken = 0;
        if (taken < config.cap) {
          keep[slots[i].index] = 1;
          ++taken;
        }
      }
      break;
    }
  }

  const Source label = config.kind == SamplerKind::Uniform ? Source::Sample : Source::Streaming;
  for (std::size_t i = 0; i < firehose.size(); ++i) {
    if (!keep[i]) continue;
    out.records.push_back(firehose[i]);
    out.records.back().source = label;
  }

  if (config.kind == SamplerKind::Uniform) return out;

  // firehose / kept occurrence counts per (hashtag, bin)
  std::map<std::string, std::vector<std::pair<std::uint64_t, std::uint64_t>>> activity;
  std::uint64_t total = 0, total_kept = 0;
  for (std::size_t i = 0; i < firehose.size(); ++i) {
    ++total;
    total_kept += keep[i] ? 1 : 0;
    auto bin = geometry.bin_of(firehose[i].ts);
    if (!bin) continue;
    for (const auto& tag : firehose[i].tags) {
      auto& cells = activity.try_emplace(tag, geometry.n_bins, std::pair<std::uint64_t, std::uint64_t>{0, 0})
                        .first->second;
      ++cells[*bin].first;
      if (keep[i]) ++cells[*bin].second;
    }
  }

  if (config.kind == SamplerKind::BiasSchedule) {
    for (const auto& e : config.schedule) {
      if (std::abs(e.g - 1.0) < delta) continue;
      auto it = activity.find(e.hashtag);
      if (it == activity.end()) continue;
      for (auto b = e.start_bin; b < e.end_bin; ++b) {
        if (it->second[b].first > 0) out.biased_bins[e.hashtag].push_back(b);
      }
    }
  } else {
    const double overall = total == 0 ? 0.0 : static_cast<double>(total_kept) / static_cast<double>(total);
    for (const auto& [tag, cells] : activity) {
      for (std::size_t b = 0; b < cells.size(); ++b) {
        if (cells[b].first == 0) continue;
        const double rate = static_cast<double>(cells[b].second) / static_cast<double>(cells[b].first);
        const double g = overall > 0.0 ? rate / overall : 0.0;
        if (std::abs(g - 1.0) >= delta) out.biased_bins[tag].push_back(b);
      }
    }
  }
  for (auto& [_, bins] : out.biased_bins) std::sort(bins.begin(), bins.end());
  return out;
}

GroundTruth simulate(const Scenario& scenario) {
  scenario.validate();
  GroundTruth truth;
  truth.delta = scenario.delta;
  truth.firehose = generate_firehose(scenario);
  truth.streams.reserve(scenario.samplers.size());
  for (std::size_t j = 0; j < scenario.samplers.size(); ++j) {
    truth.streams.push_back(apply_sampler(truth.firehose, scenario.samplers[j], scenario.geometry(),
                                          scenario.seed, j, scenario.delta));
  }
  return truth;
}

Scenario parse_scenario(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("scenario", std::string("invalid JSON: ") + e.what());
  }
  as_object(doc, "scenario");
  reject_unknown(doc,
                 {"n_hashtags", "zipf_exponent", "base_rate", "n_bins", "bin_width", "start_ts",
                  "spikes", "samplers", "seed", "delta"},
                 "");
  Scenario sc;
  sc.n_hashtags = as_count(require(doc, "n_hashtags", "n_hashtags"), "n_hashtags");
  sc.zipf_exponent = as_real(require(doc, "zipf_exponent", "zipf_exponent"), "zipf_exponent");
  sc.base_rate = as_real(require(doc, "base_rate", "base_rate"), "base_rate");
  sc.n_bins = as_count(require(doc, "n_bins", "n_bins"), "n_bins");
  if (doc.contains("bin_width")) sc.bin_width = as_integer(doc["bin_width"], "bin_width");
  if (doc.contains("start_ts")) sc.start_ts = as_integer(doc["start_ts"], "start_ts");
  if (doc.contains("seed")) sc.seed = as_count(doc["seed"], "seed");
  if (doc.contains("delta")) sc.delta = as_real(doc["delta"], "delta");
  if (doc.contains("spikes")) {
    const auto& spikes = as_array(doc["spikes"], "spikes");
    for (std::size_t i = 0; i < spikes.size(); ++i) {
      const std::string at = "spikes[" + std::to_string(i) + "]";
      const auto& s = as_object(spikes[i], at);
      reject_unknown(s, {"hashtag", "start_bin", "end_bin", "multiplier"}, at);
      sc.spikes.push_back(
          {normalize_hashtag(as_string(require(s, "hashtag", at + ".hashtag"), at + ".hashtag")),
           as_count(require(s, "start_bin", at + ".start_bin"), at + ".start_bin"),
           as_count(require(s, "end_bin", at + ".end_bin"), at + ".end_bin"),
           as_real(require(s, "multiplier", at + ".multiplier"), at + ".multiplier")});
    }
  }
  if (doc.contains("samplers")) {
    const auto& samplers = as_array(doc["samplers"], "samplers");
    for (std::size_t j = 0; j < samplers.size(); ++j) sc.samplers.push_back(parse_sampler(samplers[j], j));
  }
  sc.validate();
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(path.string() + ": cannot open for reading");
  return parse_scenario(in);
}

void write_ground_truth(std::ostream& out, const GroundTruth& truth, std::uint64_t seed) {
  nlohmann::ordered_json doc;
  doc["seed"] = seed;
  doc["delta"] = truth.delta;
  doc["firehose_records"] = truth.firehose.size();
  auto samplers = nlohmann::ordered_json::array();
  for (const auto& s : truth.streams) {
    nlohmann::ordered_json entry;
    entry["name"] = s.name;
    entry["kind"] = std::string(to_string(s.kind));
    entry["records"] = s.records.size();
    nlohmann::ordered_json bins = nlohmann::ordered_json::object();
    for (const auto& [tag, b] : s.biased_bins) bins[tag] = b;
    entry["biased_bins"] = std::move(bins);
    samplers.push_back(std::move(entry));
  }
  doc["samplers"] = std::move(samplers);
  out << doc.dump(2) << '\n';
}

}  // namespace streambias
