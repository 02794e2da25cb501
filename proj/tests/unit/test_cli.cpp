#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <loglin/sim/sim_log.hpp>
#include <loglin_cli/bundle_io.hpp>
#include <loglin_cli/commands.hpp>
#include <loglin_cli/config.hpp>

using namespace loglin;
using namespace loglin::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("loglin_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const std::string& name) const { return (path / name).string(); }
};

json quick_config() {
  std::ifstream is(std::string(LOGLIN_CONFIG_DIR) + "/small_disturbance.json");
  json j = json::parse(is);
  j["simulation"]["duration"] = 0.5;
  j["simulation"]["runs"] = 2;
  j["certification"]["group_samples"] = 300;
  return j;
}

std::string write_json(const TempDir& dir, const std::string& name, const json& j) {
  std::ofstream os(dir.str(name));
  os << j.dump(2);
  return dir.str(name);
}

int invoke(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "loglin");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str() + err.str();
  return rc;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("shipped configs parse") {
  for (const char* name : {"small_disturbance", "large_disturbance", "min_snap_demo"}) {
    const ScenarioConfig cfg = load_config(std::string(LOGLIN_CONFIG_DIR) + "/" + name + ".json");
    CHECK(cfg.name == name);
  }
  const auto cfg = load_config(std::string(LOGLIN_CONFIG_DIR) + "/large_disturbance.json");
  CHECK(cfg.bounds.accel == Vec3::Constant(1.0));
  CHECK(cfg.bounds.alpha == Vec3::Constant(0.1));
  CHECK(resolve_envelope(cfg).omega == Vec3(5, 5, 1));
}

TEST_CASE("config errors name the offending key") {
  json j = quick_config();
  j["simulation"]["dtt"] = 1;
  CHECK_THROWS_WITH_AS(parse_config(j), doctest::Contains("simulation.dtt"), ConfigError);
  j = quick_config();
  j["disturbance"]["accel_bound"] = json::array({1, 2});
  CHECK_THROWS_WITH_AS(parse_config(j), doctest::Contains("disturbance.accel_bound"), ConfigError);
  j = quick_config();
  j.erase("reference");
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = quick_config();
  j["vehicle"]["mass"] = -1;
  CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("bundle JSON round-trips exactly") {
  const auto cfg = parse_config(quick_config());
  const auto b = synthesis::certify_cascade(cfg.vehicle, resolve_envelope(cfg), cfg.bounds,
                                            cfg.weights, cfg.certify, cfg.name);
  const json j = bundle_to_json(b);
  const auto back = bundle_from_json(json::parse(j.dump()));
  CHECK(bundle_to_json(back) == j);
  CHECK(back.zeta_set.ellipsoid.P == b.zeta_set.ellipsoid.P);
  json broken = j;
  broken["zeta_set"]["P"] = json::array({json::array({1.0})});
  CHECK_THROWS_AS(bundle_from_json(broken), ConfigError);
}

TEST_CASE("certify, simulate, verify and export") {
  TempDir dir;
  const std::string config = write_json(dir, "quick.json", quick_config());
  const std::string out = dir.str("out");
  std::string text;
  REQUIRE(invoke({"certify", "--config", config, "--out", out}, &text) == kOk);
  CHECK(text.find("omega bound") != std::string::npos);
  const std::string bundle = out + "/small_disturbance_bundle.json";
  REQUIRE(fs::exists(bundle));

  REQUIRE(invoke({"simulate", "--config", config, "--bundle", bundle, "--out", out, "--runs", "2",
                  "--seed", "5"}) == kOk);
  CHECK(fs::exists(out + "/small_disturbance_history_run0.csv"));
  CHECK(fs::exists(out + "/small_disturbance_history_run1.csv"));
  CHECK(fs::exists(out + "/small_disturbance_runs.csv"));

  CHECK(invoke({"verify", "--bundle", bundle, "--out", out}, &text) == kOk);
  CHECK(text.find("2 logs, 0 violations") != std::string::npos);
  CHECK(invoke({"verify", "--bundle", bundle, out + "/small_disturbance_history_run1.csv"}) == kOk);

  REQUIRE(invoke({"export", "--bundle", bundle, "--out", out}) == kOk);
  for (const char* f : {"_algebra_sets.csv", "_group_sets.csv", "_bounds.csv"}) {
    const std::string p = out + "/small_disturbance" + f;
    REQUIRE(fs::exists(p));
    if (std::string(f) != "_bounds.csv")
      CHECK(slurp(p).rfind("projection,dim,element,vertex,x,y,z\n", 0) == 0);
  }

  // Identical seeds give byte-identical histories.
  const std::string first = slurp(out + "/small_disturbance_history_run0.csv");
  REQUIRE(invoke({"simulate", "--config", config, "--bundle", bundle, "--out", out, "--runs", "1",
                  "--seed", "5"}) == kOk);
  CHECK(slurp(out + "/small_disturbance_history_run0.csv") == first);
}

TEST_CASE("exit codes") {
  TempDir dir;
  CHECK(invoke({}) == kConfigError);
  CHECK(invoke({"certify"}) == kConfigError);
  CHECK(invoke({"certify", "--config", dir.str("missing.json")}) == kConfigError);
  CHECK(invoke({"frobnicate"}) == kConfigError);

  json bad = quick_config();
  bad["surprise"] = true;
  CHECK(invoke({"certify", "--config", write_json(dir, "bad.json", bad)}) == kConfigError);

  json infeasible = quick_config();
  infeasible["reference"]["accel"] = json::array({0, 0, 0});
  infeasible["reference"]["omega"] = json::array({0, 0, 0});
  std::string text;
  CHECK(invoke({"certify", "--config", write_json(dir, "inf.json", infeasible), "--out",
                dir.str("o")}, &text) == kInfeasible);
  CHECK(text.find("zeta LQR") != std::string::npos);

  // A tampered history leaves the certified set.
  const std::string config = write_json(dir, "quick.json", quick_config());
  REQUIRE(invoke({"simulate", "--config", config, "--out", dir.str("o"), "--runs", "1"}) == kOk);
  const std::string hist = dir.str("o/small_disturbance_history_run0.csv");
  sim::SimLog log = sim::read_history_csv(hist);
  log.records.back().zeta *= 1e6;
  sim::write_history_csv(hist, log);
  CHECK(invoke({"verify", "--bundle", dir.str("o/small_disturbance_bundle.json"), hist}) ==
        kContainmentViolation);

  std::ofstream(dir.str("garbage.csv")) << "not,a,history\n";
  CHECK(invoke({"verify", "--bundle", dir.str("o/small_disturbance_bundle.json"), dir.str("garbage.csv")}) ==
        kConfigError);
}
