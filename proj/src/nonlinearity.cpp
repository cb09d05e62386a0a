#include "cqnp/nonlinearity.hpp"

#include <cmath>
#include <string>

#include "cqnp/error.hpp"
#include "cqnp/kinetic.hpp"

namespace cqnp {
namespace {

[[noreturn]] void throw_invalid_region(DensityArgs args) {
  throw CollapseError("no real positive transverse width at a3 = " + std::to_string(args.a3) +
                      ", a5 = " + std::to_string(args.a5));
}

}  // namespace

double np_general(DensityArgs args) {
  const WidthSolution w = solve_width(args);
  if (!w.valid()) throw_invalid_region(args);
  const double s = w.s;
  return (1.0 + s * s) / (2.0 * s) + args.a3 / s + args.a5 / (s * s);
}

double np_general_radical(DensityArgs args) {
  const CardanoRoots roots = cardano_roots(args);
  if (roots.status != WidthStatus::Valid) throw_invalid_region(args);
  if (roots.degenerate) {
    // B = C = 0 at a3 = -1; the bracket form is the continuous extension.
    const double s = roots.s();
    return (1.0 + s * s) / (2.0 * s) + args.a3 / s + args.a5 / (s * s);
  }
  const Complex b = roots.cube_roots[roots.selected];
  const Complex c = b * b + 3.0 * (1.0 + args.a3);
  const Complex num = (3.0 + c * c / (3.0 * b * b)) * b * c + 6.0 * b * (args.a3 * c + 3.0 * args.a5 * b);
  return (num / (2.0 * c * c)).real();
}

double np_cubic(double a3) {
  if (!(a3 > -1.0)) {
    throw CollapseError("cubic nonpolynomial term requires g3|phi|^2 > -1, got " + std::to_string(a3));
  }
  return (1.0 + 1.5 * a3) / std::sqrt(1.0 + a3);
}

double matched_g3(double g5, double peak_density) {
  if (!(peak_density >= 0.0)) throw InvalidArgument("peak density must be non-negative");
  return -(4.0 / 3.0) * g5 * peak_density;
}

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::NPGeneral: return "np";
    case ModelKind::NPSECubic: return "npse-cubic";
    case ModelKind::CQPolynomial: return "cq-poly";
  }
  return "?";
}

NonlinearModel::NonlinearModel(ModelKind kind, double g3, double g5) : kind_(kind), g3_(g3), g5_(g5) {
  if (!std::isfinite(g3) || !std::isfinite(g5)) throw InvalidArgument("couplings must be finite");
  if (kind == ModelKind::NPSECubic && g5 != 0.0) {
    throw InvalidArgument("the cubic NPSE model requires g5 = 0");
  }
}

double NonlinearModel::multiplier(double density) const {
  switch (kind_) {
    case ModelKind::NPGeneral: return np_general(args(density));
    case ModelKind::NPSECubic: return np_cubic(g3_ * density);
    case ModelKind::CQPolynomial: return np_poly(args(density));
  }
  return 0.0;
}

double NonlinearModel::energy_density(double density) const {
  switch (kind_) {
    case ModelKind::NPGeneral: {
      const DensityArgs a = args(density);
      const WidthSolution w = solve_width(a);
      if (!w.valid()) throw_invalid_region(a);
      return transverse_energy(a, w.s) * density;
    }
    case ModelKind::NPSECubic: {
      const double a3 = g3_ * density;
      if (!(a3 > -1.0)) throw_invalid_region({a3, 0.0});
      return transverse_energy({a3, 0.0}, std::sqrt(1.0 + a3)) * density;
    }
    case ModelKind::CQPolynomial:
      return density * (1.0 + 0.5 * g3_ * density + g5_ * density * density / 3.0);
  }
  return 0.0;
}

double energy_1d(const Wavefunction1D& phi, const NonlinearModel& model, double lambda) {
  const Grid1D& grid = phi.grid();
  double local = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double rho = std::norm(phi[i]);
    try {
      local += axial_potential(grid.node(i), lambda) * rho + model.energy_density(rho);
    } catch (const CollapseError& e) {
      throw CollapseError(e.what(), grid.node(i));
    }
  }
  return kinetic_energy_1d(phi.values(), grid) + local * grid.spacing();
}

}  // namespace cqnp
