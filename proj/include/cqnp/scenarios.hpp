#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cqnp/config.hpp"

namespace cqnp {

// ---- width curves -------------------------------------------------------

enum class HeldArgument { A3, A5 };

struct WidthCurveRow {
  double arg;
  std::optional<double> s_exact;  // empty outside the valid region
  double sigma2_weak;
};

/// Sweeps the free argument over [from, to] with the other held at `value`.
/// A zero-width sweep yields one row.
std::vector<WidthCurveRow> width_curves(HeldArgument held, double value, ClosedRange sweep, std::size_t points);

// ---- model comparison ---------------------------------------------------

struct DensityProfile {
  std::string model;
  std::vector<double> density;
  double mu = 0.0;
  double energy = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct PairMetrics {
  std::string pair;
  double linf_rel = 0.0;  // max |rho_a - rho_b| / max rho_a
  double l2_rel = 0.0;    // ||rho_a - rho_b||_2 / ||rho_a||_2
  double dmu = 0.0;       // |mu_a - mu_b|
};

struct ComparisonReport {
  Grid1D grid;
  std::vector<DensityProfile> profiles;
  std::vector<PairMetrics> metrics;
  CouplingParams couplings;
};

PairMetrics compare_profiles(const DensityProfile& a, const DensityProfile& b);

/// Linear interpolation of samples on `from` onto the nodes of `to`; zero outside.
std::vector<double> resample(const Grid1D& from, std::span<const double> values, const Grid1D& to);

/// Runs each model's ground state and compares all pairs in list order. When
/// the 3D solver is included every profile lives on its axial grid, otherwise
/// on the 1D grid.
ComparisonReport compare_models(const RunConfig& config, const std::vector<ModelId>& models);

// ---- matching-condition scan --------------------------------------------

struct MatchScanResult {
  double g3 = 0.0;
  std::vector<double> g3_history;  // g3 used at each outer iteration
  std::size_t outer_iterations = 0;
  DensityProfile np;
  DensityProfile cq;
  PairMetrics matched;    // NP vs CQ at the final g3
  PairMetrics unmatched;  // NP vs CQ at g3 = 0, same g5
};

/// Self-consistent g3 = -(4/3) g5 max|phi|^2 with phi the NP ground state.
/// Throws ConvergenceError when |g3 change| stays above `tol` after `max_outer` solves.
MatchScanResult match_scan(const RunConfig& config);

// ---- scenario runner ----------------------------------------------------

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitIo = 4;

/// Executes a scenario and writes its CSV artifacts plus `manifest.json` into
/// the config's output directory. Returns the process exit code and reports
/// failures on `err`.
int run_scenario(Scenario scenario, const RunConfig& config, std::ostream& err);

}  // namespace cqnp
