#include "cqnp/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "cqnp/error.hpp"

namespace cqnp {
namespace {

using Json = nlohmann::ordered_json;

struct Artifact {
  std::string name;
  std::string content;
};

struct Outcome {
  std::vector<Artifact> artifacts;
  Json results = Json::object();
};

ModelKind model_kind(ModelId id) {
  switch (id) {
    case ModelId::NPGeneral: return ModelKind::NPGeneral;
    case ModelId::NPSECubic: return ModelKind::NPSECubic;
    case ModelId::CQPolynomial: return ModelKind::CQPolynomial;
    case ModelId::GPE3D: break;
  }
  throw InvalidArgument("the 3D solver has no 1D nonlinear model");
}

std::string density_csv(const Grid1D& grid, std::span<const double> density) {
  std::string out = "x,density\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += format_real(grid.node(i)) + "," + format_real(density[i]) + "\n";
  }
  return out;
}

std::string width_profile_csv(const Grid1D& grid, const std::vector<std::optional<double>>& widths) {
  std::string out = "x,sigma2\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += format_real(grid.node(i)) + "," + (widths[i] ? format_real(*widths[i]) : std::string()) + "\n";
  }
  return out;
}

std::string report_csv(const std::vector<PairMetrics>& metrics) {
  std::string out = "pair,linf_rel,l2_rel,dmu\n";
  for (const PairMetrics& m : metrics) {
    out += m.pair + "," + format_real(m.linf_rel) + "," + format_real(m.l2_rel) + "," + format_real(m.dmu) + "\n";
  }
  return out;
}

Json profile_json(const DensityProfile& p) {
  return Json{{"model", p.model}, {"mu", p.mu}, {"energy", p.energy}, {"iterations", p.iterations},
              {"converged", p.converged}};
}

Json metrics_json(const PairMetrics& m) {
  return Json{{"pair", m.pair}, {"linf_rel", m.linf_rel}, {"l2_rel", m.l2_rel}, {"dmu", m.dmu}};
}

DensityProfile profile_1d(const GroundStateResult& gs, std::string name) {
  return {std::move(name), gs.phi.density(), gs.mu, gs.energy, gs.iterations, gs.converged};
}

DensityProfile profile_3d(const GroundState3D& gs) {
  return {std::string(to_string(ModelId::GPE3D)), project_axial(gs.psi).density, gs.mu, gs.energy, gs.iterations,
          gs.converged};
}

Outcome run_width_map(const RunConfig& cfg) {
  const std::size_t res = cfg.count("width_map.resolution");
  const auto rows = width_map({cfg.real("width_map.a3_min"), cfg.real("width_map.a3_max")},
                              {cfg.real("width_map.a5_min"), cfg.real("width_map.a5_max")}, res);
  std::string csv = "a3,a5,s,status\n";
  std::size_t valid = 0;
  for (const WidthMapRow& row : rows) {
    csv += format_real(row.a3) + "," + format_real(row.a5) + "," +
           (row.solution.valid() ? format_real(row.solution.s) : std::string()) + "," +
           std::string(to_string(row.solution.status)) + "\n";
    valid += row.solution.valid() ? 1 : 0;
  }
  Outcome out;
  out.artifacts.push_back({"width_map.csv", std::move(csv)});
  out.results = Json{{"rows", rows.size()}, {"valid_rows", valid}};
  return out;
}

Outcome run_width_curves(const RunConfig& cfg) {
  const HeldArgument held = cfg.text("width_curves.fixed") == "a3" ? HeldArgument::A3 : HeldArgument::A5;
  const auto rows = width_curves(held, cfg.real("width_curves.value"),
                                 {cfg.real("width_curves.from"), cfg.real("width_curves.to")},
                                 cfg.count("width_curves.points"));
  std::string csv = "arg,s_exact,sigma2_weak\n";
  std::size_t invalid = 0;
  for (const WidthCurveRow& row : rows) {
    csv += format_real(row.arg) + "," + (row.s_exact ? format_real(*row.s_exact) : std::string()) + "," +
           format_real(row.sigma2_weak) + "\n";
    invalid += row.s_exact ? 0 : 1;
  }
  Outcome out;
  out.artifacts.push_back({"width_curves.csv", std::move(csv)});
  out.results = Json{{"rows", rows.size()}, {"invalid_rows", invalid}};
  return out;
}

Outcome run_ground_state(const RunConfig& cfg) {
  const ModelId model = *parse_model(cfg.text("model"));
  Outcome out;
  DensityProfile profile;
  Grid1D grid = cfg.solver1d(ModelKind::CQPolynomial).grid;
  if (model == ModelId::GPE3D) {
    const SolverConfig3D s3 = cfg.solver3d();
    const GroundState3D gs = ground_state_3d(s3);
    profile = profile_3d(gs);
    grid = s3.grid.axial();
    out.artifacts.push_back({"transverse_width.csv", width_profile_csv(grid, transverse_width_profile(gs.psi))});
  } else {
    profile = profile_1d(ground_state_1d(cfg.solver1d(model_kind(model))), std::string(to_string(model)));
  }
  out.artifacts.insert(out.artifacts.begin(), {"density.csv", density_csv(grid, profile.density)});
  out.results = profile_json(profile);
  return out;
}

Outcome run_compare(const RunConfig& cfg) {
  std::vector<ModelId> models;
  for (const std::string& name : cfg.list("compare.models")) models.push_back(*parse_model(name));
  const ComparisonReport report = compare_models(cfg, models);
  Outcome out;
  Json profiles = Json::array();
  for (const DensityProfile& p : report.profiles) {
    out.artifacts.push_back({"density_" + p.model + ".csv", density_csv(report.grid, p.density)});
    profiles.push_back(profile_json(p));
  }
  out.artifacts.push_back({"report.csv", report_csv(report.metrics)});
  Json metrics = Json::array();
  for (const PairMetrics& m : report.metrics) metrics.push_back(metrics_json(m));
  out.results = Json{{"profiles", profiles}, {"metrics", metrics}};
  return out;
}

Outcome run_match_scan(const RunConfig& cfg) {
  const MatchScanResult r = match_scan(cfg);
  const Grid1D grid = cfg.solver1d(ModelKind::CQPolynomial).grid;
  Outcome out;
  out.artifacts.push_back({"density_np.csv", density_csv(grid, r.np.density)});
  out.artifacts.push_back({"density_cq-poly.csv", density_csv(grid, r.cq.density)});
  out.artifacts.push_back({"report.csv", report_csv({r.matched, r.unmatched})});
  std::string history = "iteration,g3\n";
  for (std::size_t i = 0; i < r.g3_history.size(); ++i) {
    history += std::to_string(i) + "," + format_real(r.g3_history[i]) + "\n";
  }
  out.artifacts.push_back({"match_history.csv", std::move(history)});
  out.results = Json{{"g3", r.g3},
                     {"g5", cfg.real("coupling.g5")},
                     {"outer_iterations", r.outer_iterations},
                     {"np", profile_json(r.np)},
                     {"cq", profile_json(r.cq)},
                     {"matched", metrics_json(r.matched)},
                     {"unmatched", metrics_json(r.unmatched)}};
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file << content;
  file.close();
  if (!file) throw IoError("failed writing " + path.string());
}

}  // namespace

std::vector<WidthCurveRow> width_curves(HeldArgument held, double value, ClosedRange sweep, std::size_t points) {
  if (points < 1) throw InvalidArgument("width curve needs at least one point");
  if (!std::isfinite(value) || !std::isfinite(sweep.lo) || !std::isfinite(sweep.hi)) {
    throw InvalidArgument("width curve arguments must be finite");
  }
  const std::size_t n = sweep.lo == sweep.hi ? 1 : points;
  std::vector<WidthCurveRow> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double arg = sweep.sample(i, n);
    const DensityArgs args = held == HeldArgument::A5 ? DensityArgs{arg, value} : DensityArgs{value, arg};
    const WidthSolution w = solve_width(args);
    const double sigma = weak_width(args);
    rows.push_back({arg, w.valid() ? std::optional<double>(w.s) : std::nullopt, sigma * sigma});
  }
  return rows;
}

PairMetrics compare_profiles(const DensityProfile& a, const DensityProfile& b) {
  if (a.density.size() != b.density.size()) throw InvalidArgument("profiles live on different grids");
  double peak = 0.0;
  double max_diff = 0.0;
  double diff_sq = 0.0;
  double ref_sq = 0.0;
  for (std::size_t i = 0; i < a.density.size(); ++i) {
    const double d = a.density[i] - b.density[i];
    peak = std::max(peak, a.density[i]);
    max_diff = std::max(max_diff, std::abs(d));
    diff_sq += d * d;
    ref_sq += a.density[i] * a.density[i];
  }
  if (!(peak > 0.0)) throw InvalidArgument("reference profile has no density");
  return {a.model + "-" + b.model, max_diff / peak, std::sqrt(diff_sq / ref_sq), std::abs(a.mu - b.mu)};
}

std::vector<double> resample(const Grid1D& from, std::span<const double> values, const Grid1D& to) {
  if (values.size() != from.size()) throw InvalidArgument("sample count does not match the source grid");
  std::vector<double> out(to.size(), 0.0);
  const double h = from.spacing();
  for (std::size_t i = 0; i < to.size(); ++i) {
    const double x = to.node(i);
    const double t = (x + from.half_width()) / h;
    if (t < 0.0 || t > static_cast<double>(from.size() - 1)) continue;
    auto k = static_cast<std::size_t>(std::floor(t));
    if (k >= from.size() - 1) k = from.size() - 2;
    double frac = t - static_cast<double>(k);
    // Snap to a node when the grids line up.
    if (std::abs(frac) < 1e-9) frac = 0.0;
    if (std::abs(frac - 1.0) < 1e-9) frac = 1.0;
    out[i] = (1.0 - frac) * values[k] + frac * values[k + 1];
  }
  return out;
}

ComparisonReport compare_models(const RunConfig& config, const std::vector<ModelId>& models) {
  const bool has_3d = std::find(models.begin(), models.end(), ModelId::GPE3D) != models.end();
  const Grid1D grid1 = config.solver1d(ModelKind::CQPolynomial).grid;
  const SolverConfig3D s3 = config.solver3d();
  ComparisonReport report{has_3d ? s3.grid.axial() : grid1, {}, {}, config.couplings()};
  for (ModelId id : models) {
    if (id == ModelId::GPE3D) {
      report.profiles.push_back(profile_3d(ground_state_3d(s3)));
    } else {
      DensityProfile p = profile_1d(ground_state_1d(config.solver1d(model_kind(id))), std::string(to_string(id)));
      if (has_3d) p.density = resample(grid1, p.density, report.grid);
      report.profiles.push_back(std::move(p));
    }
  }
  for (std::size_t i = 0; i < report.profiles.size(); ++i) {
    for (std::size_t j = i + 1; j < report.profiles.size(); ++j) {
      report.metrics.push_back(compare_profiles(report.profiles[i], report.profiles[j]));
    }
  }
  return report;
}

MatchScanResult match_scan(const RunConfig& config) {
  const double g5 = config.real("coupling.g5");
  const double tol = config.real("match_scan.tol");
  const std::size_t max_outer = config.count("match_scan.max_outer");
  const auto solver_for = [&](ModelKind kind, double g3) {
    RunConfig c = config;
    c.set("coupling.g3", format_real(g3));
    return c.solver1d(kind);
  };

  MatchScanResult result;
  const GroundStateResult np_free = ground_state_1d(solver_for(ModelKind::NPGeneral, 0.0));
  const GroundStateResult cq_free = ground_state_1d(solver_for(ModelKind::CQPolynomial, 0.0));
  result.unmatched = compare_profiles(profile_1d(np_free, "np"), profile_1d(cq_free, "cq-poly"));
  result.unmatched.pair += "@g3=0";

  double g3 = 0.0;
  GroundStateResult np = np_free;
  result.g3_history.push_back(g3);
  bool settled = false;
  for (std::size_t outer = 1; outer <= max_outer; ++outer) {
    const std::vector<double> rho = np.phi.density();
    const double next = matched_g3(g5, *std::max_element(rho.begin(), rho.end()));
    result.outer_iterations = outer;
    if (std::abs(next - g3) < tol) {
      settled = true;
      break;
    }
    g3 = next;
    result.g3_history.push_back(g3);
    np = ground_state_1d(solver_for(ModelKind::NPGeneral, g3));
  }
  if (!settled) {
    throw ConvergenceError("matching condition did not settle after " + std::to_string(max_outer) +
                           " outer iterations (last g3 = " + format_real(g3) + ")");
  }
  result.g3 = g3;
  result.np = profile_1d(np, "np");
  result.cq = profile_1d(ground_state_1d(solver_for(ModelKind::CQPolynomial, g3)), "cq-poly");
  result.matched = compare_profiles(result.np, result.cq);
  return result;
}

int run_scenario(Scenario scenario, const RunConfig& config, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    config.validate();
    if (const auto declared = config.scenario(); declared && *declared != scenario) {
      throw ConfigError("config declares scenario '" + std::string(to_string(*declared)) + "' but '" +
                        std::string(to_string(scenario)) + "' was requested");
    }
    switch (scenario) {
      case Scenario::WidthMap: outcome = run_width_map(config); break;
      case Scenario::WidthCurves: outcome = run_width_curves(config); break;
      case Scenario::GroundState: outcome = run_ground_state(config); break;
      case Scenario::Compare: outcome = run_compare(config); break;
      case Scenario::MatchScan: outcome = run_match_scan(config); break;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CollapseError& e) {
    err << "solver error: " << e.what();
    if (e.location()) err << " (x = " << format_real(*e.location()) << ")";
    err << "\n";
    return kExitSolver;
  } catch (const DivergenceError& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const ConvergenceError& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  try {
    const std::filesystem::path dir = config.output_dir();
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

    Json manifest;
    manifest["scenario"] = std::string(to_string(scenario));
    Json cfg = Json::object();
    for (const ConfigKey& key : config_schema()) cfg[std::string(key.name)] = config.text(key.name);
    cfg["scenario"] = std::string(to_string(scenario));
    manifest["config"] = cfg;
    manifest["results"] = outcome.results;
    Json names = Json::array();
    for (const Artifact& a : outcome.artifacts) {
      write_file(dir / a.name, a.content);
      names.push_back(a.name);
    }
    manifest["artifacts"] = names;
    manifest["wall_time_seconds"] = wall;
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace cqnp
