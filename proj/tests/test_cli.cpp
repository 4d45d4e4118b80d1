#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using namespace streambias::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "streambias");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = slurp(e.path());
  return files;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

// A small synthetic world shared by every case.
struct Fixture {
  fs::path root;
  fs::path data;

  Fixture() {
    root = fs::temp_directory_path() / ("streambias_cli_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);
    std::ofstream(root / "scenario.json") << R"({"n_hashtags": 30, "zipf_exponent": 1.0, "base_rate": 3000,
      "n_bins": 24, "samplers": [
        {"kind": "uniform", "name": "sample", "p": 0.05},
        {"kind": "uniform", "name": "other", "p": 0.05},
        {"kind": "bias_schedule", "name": "streaming", "p": 0.05,
         "schedule": [{"hashtag": "h01", "start_bin": 5, "end_bin": 10, "g": 4}]}]})";
    data = root / "data";
    const auto r = invoke({"synth", "--scenario", (root / "scenario.json").string(), "--out-dir", data.string(),
                           "--seed", "7"});
    REQUIRE(r.code == kExitOk);
    fs::create_directories(root / "queries");
    std::ifstream in(data / "sample.ndjson");
    std::string line;
    std::vector<std::string> all;
    while (std::getline(in, line)) all.push_back(line);
    // three overlapping "queries" carved by line index are enough for bookkeeping
    for (int q = 0; q < 3; ++q) {
      std::ofstream f(root / "queries" / ("q" + std::to_string(q) + ".ndjson"));
      for (std::size_t i = 0; i < all.size(); ++i) f << all[i] << '\n';
    }
  }
  ~Fixture() { fs::remove_all(root); }

  std::string at(const std::string& name) const { return (data / name).string(); }
};

const Fixture& fixture() {
  static Fixture f;
  return f;
}

std::vector<std::vector<std::string>> every_analysis() {
  const auto& f = fixture();
  return {
      {"bias", "--streaming", f.at("streaming.ndjson"), "--sample", f.at("sample.ndjson"), "--hashtag", "h01"},
      {"rankcorr", "--a", f.at("sample.ndjson"), "--b", f.at("streaming.ndjson")},
      {"zeros", "--streaming", f.at("streaming.ndjson"), "--sample", f.at("sample.ndjson")},
      {"overlap", "--a", f.at("sample.ndjson"), "--b", f.at("other.ndjson"), "--query-dir",
       (f.root / "queries").string(), "--n-windows", "3"},
      {"baseline", "--firehose", f.at("firehose.ndjson"), "--sample", f.at("sample.ndjson"), "--draws", "5",
       "--k-max", "30"},
  };
}

}  // namespace

TEST_CASE("help lists the defaults") {
  const auto r = invoke({"bias", "--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("3600") != std::string::npos);
  CHECK(r.out.find("100") != std::string::npos);
  CHECK(r.out.find("--sigma") != std::string::npos);
  CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("usage errors use their own exit code") {
  const auto& f = fixture();
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"frobnicate"}).code == kExitUsage);
  CHECK(invoke({"rankcorr", "--a", f.at("sample.ndjson"), "--b", f.at("sample.ndjson"), "--bogus"}).code ==
        kExitUsage);
  CHECK(invoke({"bias", "--streaming", f.at("streaming.ndjson"), "--sample", f.at("sample.ndjson")}).code ==
        kExitUsage);
  const auto r = invoke({"bias", "--streaming", f.at("streaming.ndjson"), "--sample", f.at("sample.ndjson"),
                         "--hashtag", "h01", "--replicates", "1"});
  CHECK(r.code == kExitUsage);
  CHECK(lines(r.err) == 1);
  CHECK(invoke({"overlap"}).code == kExitUsage);
}

TEST_CASE("bad input is a one-line error with file and line") {
  const auto& f = fixture();
  const auto bad = f.root / "bad.ndjson";
  std::ofstream(bad) << "{\"id\":1,\"ts\":0,\"tags\":[\"a\"]}\n{\"id\":2,\"ts\":\"x\",\"tags\":[]}\n";
  const auto r = invoke({"rankcorr", "--a", bad.string(), "--b", f.at("sample.ndjson")});
  CHECK(r.code == kExitError);
  CHECK(lines(r.err) == 1);
  CHECK(r.err.find("bad.ndjson:2") != std::string::npos);
  CHECK(invoke({"rankcorr", "--a", (f.root / "missing").string(), "--b", f.at("sample.ndjson")}).code ==
        kExitError);
}

TEST_CASE("rankcorr emits one row per grid point") {
  const auto& f = fixture();
  const auto r = invoke({"rankcorr", "--a", f.at("sample.ndjson"), "--b", f.at("streaming.ndjson"), "--k-max",
                         "50", "--k-step", "10"});
  REQUIRE(r.code == kExitOk);
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "k,tau_b,p_value");
  for (int i = 1; i <= 5; ++i) CHECK(rows[i].rfind(std::to_string(10 * i) + ",", 0) == 0);
}

TEST_CASE("bias report layout and series export") {
  const auto& f = fixture();
  const auto series = f.root / "series";
  const auto r = invoke({"bias", "--streaming", f.at("streaming.ndjson"), "--sample", f.at("sample.ndjson"),
                         "--hashtag", "#H01", "--series-dir", series.string(), "--n-bins", "24", "--bin-start", "0"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("bin_index,streaming_z,band_mu,band_sigma,verdict\n", 0) == 0);
  CHECK(lines(r.out) == 25);
  CHECK(r.out.find(",OVER\n") != std::string::npos);
  CHECK(lines(slurp(series / "streaming.csv")) == 25);
  CHECK(slurp(series / "sample.csv").rfind("bin_index,bin_start_ts,count,z\n", 0) == 0);
}

TEST_CASE("overlap rows") {
  const auto& f = fixture();
  const auto r = invoke(every_analysis()[3]);
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("comparison,n,median,mean,std\nbetween_source,3,", 0) == 0);
  CHECK(r.out.find("between_time,2,1,1,0\n") != std::string::npos);
}

TEST_CASE("--out writes a file instead of stdout") {
  const auto& f = fixture();
  const auto path = f.root / "zeros.csv";
  auto args = every_analysis()[2];
  args.insert(args.end(), {"--out", path.string()});
  const auto r = invoke(args);
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.empty());
  CHECK(slurp(path).rfind("rank,hashtag,known_zeros,cumulative_known_zeros\n", 0) == 0);
}

TEST_CASE("every analysis is byte-reproducible and leaves inputs alone") {
  const auto& f = fixture();
  const auto before = snapshot(f.root);
  for (const auto& args : every_analysis()) {
    const auto a = invoke(args), b = invoke(args);
    CAPTURE(args[0]);
    CHECK(a.code == kExitOk);
    CHECK(a.err.empty());
    CHECK(!a.out.empty());
    CHECK(a.out == b.out);
  }
  CHECK(snapshot(f.root) == before);
}

TEST_CASE("synth output is reproducible and follows --seed") {
  const auto& f = fixture();
  const auto scen = (f.root / "scenario.json").string();
  const auto d1 = f.root / "s1", d2 = f.root / "s2", d3 = f.root / "s3";
  REQUIRE(invoke({"synth", "--scenario", scen, "--out-dir", d1.string(), "--seed", "7"}).code == kExitOk);
  REQUIRE(invoke({"synth", "--scenario", scen, "--out-dir", d2.string(), "--seed", "7"}).code == kExitOk);
  REQUIRE(invoke({"synth", "--scenario", scen, "--out-dir", d3.string(), "--seed", "8"}).code == kExitOk);
  const auto s1 = snapshot(d1);
  CHECK(s1.size() == 5);
  CHECK(s1 == snapshot(d2));
  CHECK(s1 == snapshot(f.data));
  CHECK_FALSE(s1 == snapshot(d3));
  for (const auto& d : {d1, d2, d3}) fs::remove_all(d);
}
