#pragma once

#include <string_view>

#include "cqnp/wavefunction.hpp"
#include "cqnp/width.hpp"

namespace cqnp {

/// Mean-field multiplier N in the generalized nonpolynomial equation,
///   N = (1 + s^2)/(2s) + a3/s + a5/s^2,  s = solve_width(args).s.
/// Throws CollapseError outside the valid region.
double np_general(DensityArgs args);

/// Same multiplier from the radical form, written through B and C = B^2 + 3(1 + a3):
///   N = [(3 + C^2/(3B^2)) B C + 6B (a3 C + 3 a5 B)] / (2 C^2),
/// on the cube-root branch selected by cardano_roots.
double np_general_radical(DensityArgs args);

/// Cubic-only nonpolynomial multiplier (1 + 3a3/2) / sqrt(1 + a3). Requires a3 > -1.
double np_cubic(double a3);

/// Weak-coupling polynomial multiplier 1 + a3 + a5; the 1 is the transverse
/// zero-point shift so all models share one axial potential.
constexpr double np_poly(DensityArgs args) noexcept { return 1.0 + args.a3 + args.a5; }

/// g3 = -(4/3) g5 max|phi|^2. Throws InvalidArgument for a negative peak density.
double matched_g3(double g5, double peak_density);

/// Transverse energy per particle at width s:
///   1/(2s) + s/2 + a3/(2s) + a5/(3 s^2).
/// Its s-derivative vanishes exactly on the width cubic.
constexpr double transverse_energy(DensityArgs args, double s) noexcept {
  return 0.5 / s + 0.5 * s + 0.5 * args.a3 / s + args.a5 / (3.0 * s * s);
}

enum class ModelKind { NPGeneral, NPSECubic, CQPolynomial };

std::string_view to_string(ModelKind kind) noexcept;

class NonlinearModel {
 public:
  /// Throws InvalidArgument for non-finite couplings or NPSECubic with g5 != 0.
  NonlinearModel(ModelKind kind, double g3, double g5);

  ModelKind kind() const noexcept { return kind_; }
  double g3() const noexcept { return g3_; }
  double g5() const noexcept { return g5_; }

  DensityArgs args(double density) const noexcept { return {g3_ * density, g5_ * density * density}; }

  /// N(|phi|^2). Throws CollapseError outside the model's valid region.
  double multiplier(double density) const;

  /// Nonlinear energy density e_nl(|phi|^2) whose density-derivative is N.
  double energy_density(double density) const;

 private:
  ModelKind kind_;
  double g3_;
  double g5_;
};

/// E = int [ |phi_x|^2/2 + V |phi|^2 + e_nl(|phi|^2) ] dx.
double energy_1d(const Wavefunction1D& phi, const NonlinearModel& model, double lambda);

}  // namespace cqnp
