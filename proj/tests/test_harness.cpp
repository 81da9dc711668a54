// Harness: catalog integrity, config parsing and rejection, deterministic run
// directories, report layout, and the CSV / formatting helpers.
//
// Determinism is the load-bearing property here: the same config must produce
// byte-identical report.json on every run, the run directory name must depend
// on the science parameters and nothing else (in particular not on the output
// root), and wall-clock time must stay out of the hashed artifact.
#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "beam/errors.hpp"
#include "beam/experiments.hpp"
#include "beam/report.hpp"
#include "beam/snapshot.hpp"

using namespace beam;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path p = fs::path("harness_test_tmp") / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("experiment catalog is complete and resolvable") {
  auto cat = list_experiments();
  CHECK(cat.size() == 12);
  for (std::size_t i = 0; i < cat.size(); ++i) {
    CHECK(!cat[i].name.empty());
    CHECK(!cat[i].summary.empty());
    for (std::size_t j = i + 1; j < cat.size(); ++j) CHECK(cat[i].name != cat[j].name);
    RunConfig cfg = default_config(cat[i].name);
    CHECK_NOTHROW(cfg.validate());
    // every default survives a round trip through its own JSON form
    RunConfig back = RunConfig::from_json(cfg.to_json());
    CHECK(back.to_json().dump() == cfg.to_json().dump());
  }
  CHECK_THROWS_AS(default_config("no-such-experiment"), ConfigError);
}

TEST_CASE("config json round trip preserves mutated fields") {
  RunConfig cfg = default_config("picard");
  cfg.seed = 7;
  cfg.amp = 0.07;
  cfg.times = {0.25, 0.5};
  cfg.out_dir = "elsewhere";
  RunConfig back = RunConfig::from_json(cfg.to_json());
  CHECK(back.seed == 7);
  CHECK(back.amp == 0.07);
  CHECK(back.times == std::vector<double>{0.25, 0.5});
  CHECK(back.out_dir == "elsewhere");
  CHECK(back.to_json().dump() == cfg.to_json().dump());
}

TEST_CASE("config parser rejects unknown keys naming the offender") {
  try {
    RunConfig::from_text(R"({"experiment": "picard", "grid": {"NN": 32}})");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("NN") != std::string::npos);
  }
  CHECK_THROWS_AS(RunConfig::from_text(R"({"experiment": "picard", "bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_text(R"({"experiment": "unheard-of"})"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_text(R"({"experiment": "picard", "physics": {"kappa": "x"}})"),
                  ConfigError);
  CHECK_THROWS_AS(RunConfig::from_text("not json at all"), ConfigError);
}

TEST_CASE("partial configs inherit the experiment defaults") {
  RunConfig cfg = RunConfig::from_text(R"({"experiment": "split", "solver": {"dt": 0.004}})");
  CHECK(cfg.experiment == "split");
  CHECK(cfg.dt == 0.004);
  CHECK(cfg.kappa == 3.0);  // untouched defaults survive
  CHECK(cfg.grid.N == 256);
  CHECK(cfg.grid.L == 32.0);
}

TEST_CASE("run directories are deterministic and ignore the output root") {
  RunConfig cfg = default_config("admissible");
  cfg.out_dir = fresh_dir("roota").string();
  RunArtifacts first = run(cfg);
  const std::string report_bytes = slurp(fs::path(first.run_dir) / "report.json");

  RunArtifacts again = run(cfg);
  CHECK(again.run_dir == first.run_dir);
  CHECK(slurp(fs::path(again.run_dir) / "report.json") == report_bytes);

  RunConfig moved = cfg;
  moved.out_dir = fresh_dir("rootb").string();
  RunArtifacts other = run(moved);
  CHECK(fs::path(other.run_dir).filename() == fs::path(first.run_dir).filename());

  // a science parameter, however small, moves the directory
  RunConfig tweaked = cfg;
  tweaked.dim = 3;
  RunArtifacts third = run(tweaked);
  CHECK(fs::path(third.run_dir).filename() != fs::path(first.run_dir).filename());
}

TEST_CASE("reports carry the format header and the full config echo") {
  RunConfig cfg = default_config("regime");
  cfg.out_dir = fresh_dir("report").string();
  RunArtifacts art = run(cfg);
  Json rep = Json::parse(slurp(fs::path(art.run_dir) / "report.json"));
  CHECK(rep.at("format_version").get<int>() == 1);
  CHECK(rep.at("experiment").get<std::string>() == "regime");
  CHECK(rep.at("results").at("selected").get<std::string>() == "critical-strichartz");
  CHECK(rep.at("results").at("energy_class").get<std::string>() == "critical");
  // the directory suffix is the config hash
  const std::string leaf = fs::path(art.run_dir).filename().string();
  CHECK(leaf == "regime-" + rep.at("config_hash").get<std::string>());
  // wall-clock time lives in the sidecar, never in the hashed report
  CHECK(slurp(fs::path(art.run_dir) / "report.json").find("wall_seconds") == std::string::npos);
  const std::string timing = slurp(fs::path(art.run_dir) / "timing.txt");
  CHECK(timing.rfind("wall_seconds", 0) == 0);
  // the config echo reproduces the exact input
  RunConfig echoed = RunConfig::from_json(rep.at("config"));
  CHECK(echoed.to_json().dump() == cfg.to_json().dump());
}

TEST_CASE("window gate refuses long runs unless explicitly overridden") {
  RunConfig cfg = default_config("picard");
  cfg.grid = GridSpec{1, 64, 16.0};  // window about 0.37 for this data, T = 0.5
  try {
    run_experiment(cfg);
    FAIL("expected the window gate to fire");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("window") != std::string::npos);
  }
  cfg.allow_beyond_window = true;
  ExperimentOutput out = run_experiment(cfg);
  bool noted = false;
  for (const std::string& n : out.notes) noted = noted || n.find("window") != std::string::npos;
  CHECK(noted);
}

TEST_CASE("linear experiment meets its closed form in the dispatcher") {
  ExperimentOutput out = run_experiment(default_config("linear"));
  CHECK(out.results.at("max_error").get<double>() < 1e-10);
  CHECK(out.results.at("energy").at("per_mode_max_rel_dev").get<double>() < 1e-12);
  CHECK(out.results.at("energy").at("total_rel_drift").get<double>() < 1e-11);
}

TEST_CASE("list experiment reports the catalog") {
  ExperimentOutput out = run_experiment(default_config("list"));
  CHECK(out.results.at("catalog").size() == 12);
}

TEST_CASE("snapshots are written on request and read back") {
  RunConfig cfg = default_config("split");
  cfg.grid = GridSpec{1, 64, 16.0};
  cfg.T = 0.25;  // inside this grid's window, no override needed
  cfg.write_snapshots = true;
  cfg.out_dir = fresh_dir("snaps").string();
  RunArtifacts art = run(cfg);
  Field u = read_snapshot((fs::path(art.run_dir) / "u_final.snap").string());
  CHECK(u.grid == cfg.grid);
  CHECK(u.real_tagged);
  Field v = read_snapshot((fs::path(art.run_dir) / "v_final.snap").string());
  CHECK(v.grid == cfg.grid);
}

TEST_CASE("series csv uses crlf line endings and escapes fields") {
  CHECK(to_csv({{"a", "b,c", "d\"e"}}) == "a,\"b,c\",\"d\"\"e\"\r\n");
  CHECK(to_csv({{"x\ny", "", "plain"}}) == "\"x\ny\",,plain\r\n");
  CHECK(to_csv({{"eps", "ratio"}, {"0.4", "12.5"}}) == "eps,ratio\r\n0.4,12.5\r\n");
}

TEST_CASE("format double round trips shortest decimal forms") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.05) == "0.05");
  CHECK(format_double(-2.5) == "-2.5");
  for (double v : {3.141592653589793, 1e-300, 0.1, 2.0 / 3.0, 123456789.123}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("fnv hash matches the published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
  CHECK(hash8("") == "cbf29ce4");
}

TEST_CASE("cleanup of harness scratch space") {
  // not a test: drop the temp roots the cases above created
  std::error_code ec;
  fs::remove_all("harness_test_tmp", ec);
  CHECK(!fs::exists("harness_test_tmp"));
}
