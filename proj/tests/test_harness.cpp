#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cqnp/error.hpp"
#include "cqnp/scenarios.hpp"

using namespace cqnp;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cqnp_harness_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Coarse 1D settings so harness runs stay quick.
RunConfig quick_config(const fs::path& out) {
  RunConfig cfg;
  cfg.set("output.dir", out.string());
  cfg.set("grid1d.points", "257");
  cfg.set("solver1d.dt", "0.01");
  cfg.set("solver1d.mu_tol", "1e-12");
  return cfg;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CQNP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig cfg = RunConfig::parse("# comment\nscenario = compare\ncoupling.g3 = 0.5  # trailing\n\n");
  CHECK(cfg.real("coupling.g3") == 0.5);
  CHECK(cfg.scenario() == Scenario::Compare);
  CHECK(cfg.real("coupling.g5") == 1.0);

  CHECK_THROWS_AS(RunConfig::parse("coupling.g7 = 1"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("coupling.g3 = 1\ncoupling.g3 = 2"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("coupling.g3 = abc"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("coupling.g3 = inf"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("coupling.g3 = nan"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("grid1d.points = -5"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("grid1d.points = 2.5"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("no equals sign"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("scenario = nonsense").validate(), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("compare.models = np, bogus").validate(), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("compare.models = np, np").validate(), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("grid1d.points = 4").validate(), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("solver1d.dt = 0").validate(), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("width_curves.fixed = a4").validate(), ConfigError);
  CHECK_THROWS_AS(RunConfig::load("/nonexistent/cqnp.cfg"), IoError);

  const RunConfig round = RunConfig::parse(cfg.to_text());
  CHECK(round.values() == cfg.values());
}

TEST_CASE("format_real keeps 17 significant digits") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(1.0) == "1");
  CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("width-map writes resolution squared rows") {
  const fs::path out = scratch_dir("width_map");
  RunConfig cfg;
  cfg.set("output.dir", out.string());
  cfg.set("width_map.resolution", "41");
  REQUIRE(run_scenario(Scenario::WidthMap, cfg, std::cerr) == kExitOk);
  const auto rows = lines_of(slurp(out / "width_map.csv"));
  REQUIRE(rows.size() == 41 * 41 + 1);
  CHECK(rows[0] == "a3,a5,s,status");
  // a3 = -2, a5 = -2: no positive root, empty s column.
  CHECK(rows[1] == "-2,-2,,no_positive_root");
  bool saw_valid = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].ends_with(",valid")) saw_valid = true;
  }
  CHECK(saw_valid);
  CHECK(fs::exists(out / "manifest.json"));
}

TEST_CASE("width-curves") {
  SUBCASE("zero-width sweep gives one row") {
    const fs::path out = scratch_dir("width_curves_single");
    RunConfig cfg;
    cfg.set("output.dir", out.string());
    cfg.set("width_curves.from", "0.5");
    cfg.set("width_curves.to", "0.5");
    REQUIRE(run_scenario(Scenario::WidthCurves, cfg, std::cerr) == kExitOk);
    const auto rows = lines_of(slurp(out / "width_curves.csv"));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "arg,s_exact,sigma2_weak");
    CHECK(rows[1].starts_with("0.5,"));
  }
  SUBCASE("a5 sweep at a3 = 0") {
    const auto rows = width_curves(HeldArgument::A3, 0.0, {0.0, 1.0}, 11);
    REQUIRE(rows.size() == 11);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].arg == doctest::Approx(0.1 * static_cast<double>(i)));
      REQUIRE(rows[i].s_exact.has_value());
      CHECK(width_residual({0.0, rows[i].arg}, *rows[i].s_exact) == doctest::Approx(0.0).epsilon(1e-12));
      const double weak = 1.0 + rows[i].arg / 3.0;
      CHECK(rows[i].sigma2_weak == doctest::Approx(weak * weak));
      if (i > 0) CHECK(*rows[i].s_exact > *rows[i - 1].s_exact);
    }
    CHECK(*rows[0].s_exact == 1.0);
  }
  SUBCASE("invalid points are flagged, not fatal") {
    const auto rows = width_curves(HeldArgument::A5, -0.5, {-2.0, 0.0}, 21);
    REQUIRE(rows.size() == 21);
    CHECK_FALSE(rows.front().s_exact.has_value());
    CHECK(rows.back().s_exact.has_value() == solve_width({0.0, -0.5}).valid());
  }
}

TEST_CASE("schema errors exit 2 without artifacts") {
  const fs::path out = scratch_dir("bad_points");
  const fs::path cfg_path = fs::temp_directory_path() / "cqnp_harness_bad.cfg";
  std::ofstream(cfg_path) << "grid1d.points = -3\noutput.dir = " << out.string() << "\n";
  CHECK(run_cli("ground-state --config " + cfg_path.string()) == kExitConfig);
  CHECK_FALSE(fs::exists(out));

  RunConfig cfg;
  cfg.set("output.dir", out.string());
  cfg.set("grid1d.points", "8");
  std::ostringstream err;
  CHECK(run_scenario(Scenario::GroundState, cfg, err) == kExitConfig);
  CHECK_FALSE(err.str().empty());
  CHECK_FALSE(fs::exists(out));

  cfg.set("grid1d.points", "257");
  cfg.set("scenario", "width-map");
  CHECK(run_scenario(Scenario::GroundState, cfg, err) == kExitConfig);
  CHECK_FALSE(fs::exists(out));

  RunConfig npse;
  npse.set("output.dir", out.string());
  npse.set("model", "npse-cubic");
  CHECK(run_scenario(Scenario::GroundState, npse, err) == kExitConfig);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("solver failures exit 3 with location") {
  const fs::path out = scratch_dir("collapse");
  RunConfig cfg = quick_config(out);
  cfg.set("model", "np");
  cfg.set("coupling.g3", "-60");
  cfg.set("coupling.g5", "0");
  std::ostringstream err;
  CHECK(run_scenario(Scenario::GroundState, cfg, err) == kExitSolver);
  CHECK(err.str().find("x = ") != std::string::npos);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("unwritable output exits 4") {
  const fs::path blocker = fs::temp_directory_path() / "cqnp_harness_blocker";
  fs::remove_all(blocker);
  std::ofstream(blocker) << "file";
  RunConfig cfg;
  cfg.set("output.dir", (blocker / "sub").string());
  cfg.set("width_map.resolution", "3");
  std::ostringstream err;
  CHECK(run_scenario(Scenario::WidthMap, cfg, err) == kExitIo);
  CHECK(run_cli("width-map --config /nonexistent/file.cfg") == kExitIo);
}

TEST_CASE("identical configs give byte-identical artifacts") {
  const fs::path a = scratch_dir("det_a");
  const fs::path b = scratch_dir("det_b");
  RunConfig cfg = quick_config(a);
  cfg.set("compare.models", "np, cq-poly");
  REQUIRE(run_scenario(Scenario::Compare, cfg, std::cerr) == kExitOk);
  cfg.set("output.dir", b.string());
  REQUIRE(run_scenario(Scenario::Compare, cfg, std::cerr) == kExitOk);
  for (const char* name : {"density_np.csv", "density_cq-poly.csv", "report.csv"}) {
    CAPTURE(name);
    const std::string text = slurp(a / name);
    CHECK_FALSE(text.empty());
    CHECK(text == slurp(b / name));
  }
  CHECK(lines_of(slurp(a / "density_np.csv"))[0] == "x,density");
  const auto report = lines_of(slurp(a / "report.csv"));
  REQUIRE(report.size() == 2);
  CHECK(report[0] == "pair,linf_rel,l2_rel,dmu");
  CHECK(report[1].starts_with("np-cq-poly,"));
}

TEST_CASE("manifest reproduces its run") {
  const fs::path a = scratch_dir("manifest_a");
  const fs::path b = scratch_dir("manifest_b");
  RunConfig cfg = quick_config(a);
  cfg.set("model", "cq-poly");
  cfg.set("coupling.g3", "0.7");
  cfg.set("coupling.g5", "-0.2");
  REQUIRE(run_scenario(Scenario::GroundState, cfg, std::cerr) == kExitOk);

  const auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
  CHECK(manifest["scenario"] == "ground-state");
  CHECK(manifest["results"]["converged"] == true);
  CHECK(manifest["results"]["iterations"].get<std::size_t>() > 0);
  CHECK(manifest["wall_time_seconds"].get<double>() >= 0.0);
  CHECK(manifest["artifacts"] == nlohmann::json::array({"density.csv"}));

  RunConfig again = RunConfig::load(a / "manifest.json");
  CHECK(again.real("coupling.g5") == -0.2);
  again.set("output.dir", b.string());
  REQUIRE(run_scenario(*again.scenario(), again, std::cerr) == kExitOk);
  CHECK(slurp(a / "density.csv") == slurp(b / "density.csv"));
}

TEST_CASE("compare np vs npse-cubic at g5 = 0 is exact") {
  RunConfig cfg = quick_config(scratch_dir("unused"));
  cfg.set("coupling.g3", "1");
  cfg.set("coupling.g5", "0");
  const ComparisonReport report = compare_models(cfg, {ModelId::NPGeneral, ModelId::NPSECubic});
  REQUIRE(report.metrics.size() == 1);
  CHECK(report.metrics[0].pair == "np-npse-cubic");
  CHECK(report.metrics[0].linf_rel < 1e-10);
  CHECK(report.metrics[0].dmu < 1e-10);
  CHECK(report.grid == cfg.solver1d(ModelKind::NPGeneral).grid);
}

TEST_CASE("compare metrics and resampling") {
  const Grid1D grid(5.0, 101);
  DensityProfile a{"a", std::vector<double>(101, 0.0), 1.0};
  DensityProfile b{"b", std::vector<double>(101, 0.0), 1.25};
  a.density[50] = 2.0;
  b.density[50] = 1.0;
  b.density[10] = 0.5;
  const PairMetrics m = compare_profiles(a, b);
  CHECK(m.pair == "a-b");
  CHECK(m.linf_rel == doctest::Approx(0.5));
  CHECK(m.l2_rel == doctest::Approx(std::sqrt(1.25) / 2.0));
  CHECK(m.dmu == doctest::Approx(0.25));
  CHECK_THROWS_AS(compare_profiles(a, DensityProfile{"c", std::vector<double>(7, 0.0)}), InvalidArgument);

  std::vector<double> line(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) line[i] = 3.0 * grid.node(i) + 1.0;
  const Grid1D finer(4.0, 77);
  const auto r = resample(grid, line, finer);
  for (std::size_t i = 0; i < finer.size(); ++i) CHECK(r[i] == doctest::Approx(3.0 * finer.node(i) + 1.0));
  const auto wide = resample(grid, line, Grid1D(6.0, 25));
  CHECK(wide.front() == 0.0);
  CHECK(wide.back() == 0.0);
  const auto same = resample(grid, line, grid);
  CHECK(same == line);
}

TEST_CASE("match_scan signs") {
  SUBCASE("g5 = 0 needs no cubic correction") {
    RunConfig cfg = quick_config(scratch_dir("unused"));
    cfg.set("coupling.g5", "0");
    const MatchScanResult r = match_scan(cfg);
    CHECK(r.g3 == 0.0);
    CHECK(r.matched.linf_rel < 1e-10);
  }
  SUBCASE("weak attraction gives g3 > 0") {
    RunConfig cfg = quick_config(scratch_dir("unused"));
    cfg.set("coupling.g5", "-0.1");
    const MatchScanResult r = match_scan(cfg);
    CHECK(r.g3 > 0.0);
    REQUIRE(r.g3_history.size() >= 2);
    CHECK(std::abs(r.g3 - r.g3_history[r.g3_history.size() - 2]) < 1e-5);
    const auto rho = r.np.density;
    CHECK(r.g3 == doctest::Approx(matched_g3(-0.1, *std::max_element(rho.begin(), rho.end()))).epsilon(1e-5));
  }
  SUBCASE("non-convergence is an error") {
    RunConfig cfg = quick_config(scratch_dir("unused"));
    cfg.set("coupling.g5", "1");
    cfg.set("match_scan.max_outer", "1");
    CHECK_THROWS_AS(match_scan(cfg), ConvergenceError);
  }
}

TEST_CASE("cli subcommands") {
  const fs::path out = scratch_dir("cli");
  const fs::path cfg_path = fs::temp_directory_path() / "cqnp_harness_cli.cfg";
  std::ofstream(cfg_path) << "width_map.resolution = 5\n";
  CHECK(run_cli("width-map --config " + cfg_path.string() + " --out " + out.string() + " --threads 1") == kExitOk);
  CHECK(lines_of(slurp(out / "width_map.csv")).size() == 26);
  CHECK(run_cli("width-curves --out " + out.string()) == kExitOk);
  CHECK(lines_of(slurp(out / "width_curves.csv")).size() == 102);
  CHECK(run_cli("") == kExitConfig);
  CHECK(run_cli("frobnicate") == kExitConfig);
  CHECK(run_cli("width-map --threads -2") == kExitConfig);

  std::ofstream(cfg_path) << "scenario = compare\n";
  CHECK(run_cli("width-map --config " + cfg_path.string() + " --out " + out.string()) == kExitConfig);
}
