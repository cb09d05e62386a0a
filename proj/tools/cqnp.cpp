// Command-line front end: one subcommand per scenario.

#include <iostream>
#include <optional>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "cqnp/error.hpp"
#include "cqnp/scenarios.hpp"

namespace {

struct Options {
  std::string config;
  std::string out;
  int threads = 0;
};

void add_common(CLI::App* sub, Options& opts) {
  sub->add_option("--config", opts.config, "Config file (key = value) or run manifest");
  sub->add_option("--out", opts.out, "Output directory; overrides output.dir");
  sub->add_option("--threads", opts.threads, "Worker threads for the 3D solver (0 = default)")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubic-quintic condensate reduction: width map, 1D/3D ground states, model comparison"};
  app.require_subcommand(1);

  Options opts;
  std::optional<cqnp::Scenario> chosen;
  const std::pair<cqnp::Scenario, const char*> commands[] = {
      {cqnp::Scenario::WidthMap, "Transverse width over an (a3, a5) grid"},
      {cqnp::Scenario::WidthCurves, "Exact and weak-coupling width along a sweep"},
      {cqnp::Scenario::GroundState, "Ground state of one model"},
      {cqnp::Scenario::Compare, "Ground states of several models and pairwise density metrics"},
      {cqnp::Scenario::MatchScan, "Self-consistent matched g3 and NP vs polynomial comparison"},
  };
  for (const auto& [s, description] : commands) {
    CLI::App* sub = app.add_subcommand(std::string(cqnp::to_string(s)), description);
    add_common(sub, opts);
    sub->callback([&chosen, s] { chosen = s; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cqnp::kExitOk : cqnp::kExitConfig;
  }

  cqnp::RunConfig config;
  try {
    if (!opts.config.empty()) config = cqnp::RunConfig::load(opts.config);
    if (!opts.out.empty()) config.set("output.dir", opts.out);
  } catch (const cqnp::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return cqnp::kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cqnp::kExitConfig;
  }

  if (opts.threads > 0) cqnp::set_solver_threads(opts.threads);
  return cqnp::run_scenario(*chosen, config, std::cerr);
}
