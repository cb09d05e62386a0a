#include "cqnp/solver3d.hpp"

#include <cmath>
#include <numbers>
#include <type_traits>

#include "cqnp/error.hpp"
#include "cqnp/kinetic.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cqnp {
namespace {

using std::numbers::pi;

template <class T>
double abs_sq(const T& v) {
  if constexpr (std::is_same_v<T, double>) {
    return v * v;
  } else {
    return std::norm(v);
  }
}

// Applies one tridiagonal operator along x, y and z in turn. Lines within a
// sweep are independent and touch disjoint samples.
template <class Coef, class T>
void sweep_all_axes(const detail::LineSolver<Coef>& axial, const detail::LineSolver<Coef>& transverse,
                    const Grid3D& grid, T* data) {
  const std::size_t nx = grid.axial().size();
  const std::size_t nt = grid.transverse().size();
  const std::size_t plane = nt * nt;

  // x: all (y, z) lines at once, split into contiguous column chunks.
  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = (plane + kChunk - 1) / kChunk;
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = c * kChunk;
    const std::size_t width = std::min(kChunk, plane - begin);
    T scratch[kChunk];
    axial.solve(data + begin, plane, width, scratch);
  }

  // y: per x-plane, the nz lines of that plane together.
#pragma omp parallel
  {
    std::vector<T> scratch(nt);
#pragma omp for schedule(static)
    for (std::size_t ix = 0; ix < nx; ++ix) {
      transverse.solve(data + ix * plane, nt, nt, scratch.data());
    }
  }

  // z: contiguous lines.
#pragma omp parallel for schedule(static)
  for (std::size_t line = 0; line < nx * nt; ++line) {
    T scratch;
    transverse.solve(data + line * nt, 1, 1, &scratch);
  }
}

std::vector<double> external_potential(const Grid3D& grid, double lambda) {
  const Grid1D& ax = grid.axial();
  const Grid1D& tr = grid.transverse();
  std::vector<double> v(grid.size());
  for (std::size_t ix = 0; ix < ax.size(); ++ix) {
    const double vx = axial_potential(ax.node(ix), lambda);
    for (std::size_t iy = 0; iy < tr.size(); ++iy) {
      for (std::size_t iz = 0; iz < tr.size(); ++iz) {
        v[grid.index(ix, iy, iz)] = vx + transverse_potential(tr.node(iy), tr.node(iz));
      }
    }
  }
  return v;
}

template <class T>
double field_norm_sq(const std::vector<T>& data, const Grid3D& grid) {
  double sum = 0.0;
  for (const T& v : data) sum += abs_sq(v);
  return sum * grid.cell_volume();
}

// <psi, K psi> summed over the three axes.
template <class T>
double kinetic_energy_3d(const std::vector<T>& data, const Grid3D& grid) {
  const detail::LineSolver<double> kx = kinetic_apply_solver(grid.axial());
  const detail::LineSolver<double> kt = kinetic_apply_solver(grid.transverse());
  const std::size_t nx = grid.axial().size();
  const std::size_t nt = grid.transverse().size();
  const std::size_t plane = nt * nt;
  double total = 0.0;
  std::vector<T> w;
  std::vector<T> scratch(plane);
  for (int axis = 0; axis < 3; ++axis) {
    w = data;
    if (axis == 0) {
      kx.solve(w.data(), plane, plane, scratch.data());
    } else if (axis == 1) {
      for (std::size_t ix = 0; ix < nx; ++ix) kt.solve(w.data() + ix * plane, nt, nt, scratch.data());
    } else {
      for (std::size_t line = 0; line < nx * nt; ++line) kt.solve(w.data() + line * nt, 1, 1, scratch.data());
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if constexpr (std::is_same_v<T, double>) {
        sum += data[i] * w[i];
      } else {
        sum += (std::conj(data[i]) * w[i]).real();
      }
    }
    total += sum;
  }
  return total * grid.cell_volume();
}

enum class Functional { ChemicalPotential, Energy };

template <class T>
double evaluate_functional(const std::vector<T>& data, const Grid3D& grid, const CouplingParams& c,
                           const std::vector<double>& vext, Functional which) {
  const double c3 = which == Functional::ChemicalPotential ? 2.0 * pi * c.g3 : pi * c.g3;
  const double c5 = which == Functional::ChemicalPotential ? 3.0 * pi * pi * c.g5 : pi * pi * c.g5;
  double local = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double rho = abs_sq(data[i]);
    local += (vext[i] + c3 * rho + c5 * rho * rho) * rho;
  }
  const double value = kinetic_energy_3d(data, grid) + local * grid.cell_volume();
  if (!std::isfinite(value)) throw DivergenceError("3D functional became non-finite");
  return value;
}

// Strang-split propagator over a field of scalar type T. Imaginary time runs
// on real fields when the data is real; real time needs complex fields.
template <class T>
class Propagator3D {
 public:
  Propagator3D(const SolverConfig3D& config, TimeMode mode)
      : config_(config), mode_(mode), vext_(external_potential(config.grid, config.couplings.lambda)) {
    const Grid3D& g = config_.grid;
    if (mode == TimeMode::Imaginary) {
      axial_imag_.emplace(crank_nicolson_imaginary(g.axial(), config_.dt));
      trans_imag_.emplace(crank_nicolson_imaginary(g.transverse(), config_.dt));
    } else {
      axial_real_.emplace(crank_nicolson_real(g.axial(), config_.dt));
      trans_real_.emplace(crank_nicolson_real(g.transverse(), config_.dt));
    }
  }

  const std::vector<double>& external() const noexcept { return vext_; }

  void step(std::vector<T>& data) const {
    if (mode_ == TimeMode::Imaginary) {
      // Both half-steps use the multiplier of the incoming density.
      imaginary_factors(data);
      apply_factors(data);
      sweep_all_axes(*axial_imag_, *trans_imag_, config_.grid, data.data());
      apply_factors(data);
    } else {
      if constexpr (std::is_same_v<T, double>) {
        throw InvalidArgument("real-time propagation needs a complex field");
      } else {
        real_half_step(data);
        sweep_all_axes(*axial_real_, *trans_real_, config_.grid, data.data());
        real_half_step(data);
      }
    }
    const double nsq = field_norm_sq(data, config_.grid);
    if (!std::isfinite(nsq) || !(nsq > 0.0)) throw DivergenceError("3D field norm is not finite and positive");
    if (mode_ == TimeMode::Imaginary) {
      const double scale = 1.0 / std::sqrt(nsq);
      for (T& v : data) v *= scale;
    }
  }

 private:
  double multiplier(std::size_t i, double rho) const {
    const double c3 = 2.0 * pi * config_.couplings.g3;
    const double c5 = 3.0 * pi * pi * config_.couplings.g5;
    return vext_[i] + c3 * rho + c5 * rho * rho;
  }

  void imaginary_factors(const std::vector<T>& data) const {
    const double half = 0.5 * config_.dt;
    const std::size_t n = data.size();
    factors_.resize(n);
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) factors_[i] = std::exp(-half * multiplier(i, abs_sq(data[i])));
  }

  void apply_factors(std::vector<T>& data) const {
    const std::size_t n = data.size();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) data[i] *= factors_[i];
  }

  void real_half_step(std::vector<T>& data) const {
    const double half = 0.5 * config_.dt;
    const std::size_t n = data.size();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) data[i] *= std::polar(1.0, -half * multiplier(i, abs_sq(data[i])));
  }

  SolverConfig3D config_;
  TimeMode mode_;
  std::vector<double> vext_;
  std::optional<detail::LineSolver<double>> axial_imag_;
  std::optional<detail::LineSolver<double>> trans_imag_;
  std::optional<detail::LineSolver<Complex>> axial_real_;
  std::optional<detail::LineSolver<Complex>> trans_real_;
  mutable std::vector<double> factors_;
};

bool is_real_field(std::span<const Complex> values) {
  for (const Complex& v : values) {
    if (v.imag() != 0.0) return false;
  }
  return true;
}

template <class T>
GroundState3D run_ground_state(const SolverConfig3D& cfg, std::vector<T> data) {
  const Propagator3D<T> propagator(cfg, TimeMode::Imaginary);
  const Grid3D& grid = cfg.grid;
  GroundState3D result{Wavefunction3D(grid)};

  double mu_prev = evaluate_functional(data, grid, cfg.couplings, propagator.external(),
                                       Functional::ChemicalPotential);
  std::size_t it = 0;
  while (it < cfg.max_iters) {
    const std::size_t burst = std::min(cfg.check_interval, cfg.max_iters - it);
    for (std::size_t k = 0; k < burst; ++k) propagator.step(data);
    it += burst;
    const double mu = evaluate_functional(data, grid, cfg.couplings, propagator.external(),
                                          Functional::ChemicalPotential);
    const bool done = std::abs(mu - mu_prev) / static_cast<double>(burst) < cfg.mu_tol;
    mu_prev = mu;
    if (done) {
      result.converged = true;
      break;
    }
  }
  result.iterations = it;
  result.mu = mu_prev;
  result.energy = evaluate_functional(data, grid, cfg.couplings, propagator.external(), Functional::Energy);
  std::span<Complex> out = result.psi.values();
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = Complex(data[i]);
  return result;
}

}  // namespace

void SolverConfig3D::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time step must be positive");
  if (!(mu_tol > 0.0)) throw InvalidArgument("mu tolerance must be positive");
  if (max_iters == 0) throw InvalidArgument("max_iters must be at least 1");
  if (check_interval == 0) throw InvalidArgument("check_interval must be at least 1");
  couplings.validate();
}

Wavefunction3D step_3d(const Wavefunction3D& psi, const SolverConfig3D& config, TimeMode mode) {
  config.validate();
  if (!(psi.grid() == config.grid)) throw InvalidArgument("field grid does not match solver grid");
  std::vector<Complex> data(psi.values().begin(), psi.values().end());
  Propagator3D<Complex>(config, mode).step(data);
  return Wavefunction3D(config.grid, std::move(data));
}

GroundState3D ground_state_3d(const SolverConfig3D& config, const std::optional<Wavefunction3D>& initial_guess) {
  config.validate();
  Wavefunction3D start = initial_guess ? *initial_guess : separable_guess_3d(config.grid, config.couplings.lambda);
  if (!(start.grid() == config.grid)) throw InvalidArgument("initial guess grid does not match solver grid");
  start = normalize(start);
  if (is_real_field(start.values())) {
    std::vector<double> data(start.size());
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = start.values()[i].real();
    return run_ground_state(config, std::move(data));
  }
  return run_ground_state(config, std::vector<Complex>(start.values().begin(), start.values().end()));
}

double chemical_potential_3d(const Wavefunction3D& psi, const CouplingParams& couplings) {
  const std::vector<Complex> data(psi.values().begin(), psi.values().end());
  return evaluate_functional(data, psi.grid(), couplings, external_potential(psi.grid(), couplings.lambda),
                             Functional::ChemicalPotential);
}

double energy_3d(const Wavefunction3D& psi, const CouplingParams& couplings) {
  const std::vector<Complex> data(psi.values().begin(), psi.values().end());
  return evaluate_functional(data, psi.grid(), couplings, external_potential(psi.grid(), couplings.lambda),
                             Functional::Energy);
}

Wavefunction3D gaussian_ansatz(const Grid3D& grid, std::span<const Complex> axial, double sigma) {
  if (axial.size() != grid.axial().size()) throw InvalidArgument("axial samples do not match the axial grid");
  if (!(sigma > 0.0)) throw InvalidArgument("ansatz width must be positive");
  const Grid1D& tr = grid.transverse();
  const std::size_t nt = tr.size();
  std::vector<double> transverse(nt * nt);
  const double amp = 1.0 / (std::sqrt(pi) * sigma);
  for (std::size_t iy = 0; iy < nt; ++iy) {
    for (std::size_t iz = 0; iz < nt; ++iz) {
      const double y = tr.node(iy);
      const double z = tr.node(iz);
      const bool edge = iy == 0 || iz == 0 || iy + 1 == nt || iz + 1 == nt;
      transverse[iy * nt + iz] = edge ? 0.0 : amp * std::exp(-(y * y + z * z) / (2.0 * sigma * sigma));
    }
  }
  Wavefunction3D psi(grid);
  for (std::size_t ix = 0; ix < grid.axial().size(); ++ix) {
    for (std::size_t j = 0; j < nt * nt; ++j) psi.values()[ix * nt * nt + j] = transverse[j] * axial[ix];
  }
  return psi;
}

Wavefunction3D separable_guess_3d(const Grid3D& grid, double lambda) {
  const Wavefunction1D axial = harmonic_guess_1d(grid.axial(), lambda);
  return normalize(gaussian_ansatz(grid, axial.values(), 1.0));
}

AxialProfile project_axial(const Wavefunction3D& psi) {
  const Grid3D& grid = psi.grid();
  const std::size_t nt = grid.transverse().size();
  const double area = grid.transverse().spacing() * grid.transverse().spacing();
  AxialProfile profile{grid.axial(), std::vector<double>(grid.axial().size())};
  for (std::size_t ix = 0; ix < grid.axial().size(); ++ix) {
    double sum = 0.0;
    for (std::size_t j = 0; j < nt * nt; ++j) sum += std::norm(psi.values()[ix * nt * nt + j]);
    profile.density[ix] = sum * area;
  }
  return profile;
}

std::vector<std::optional<double>> transverse_width_profile(const Wavefunction3D& psi, double density_floor) {
  const Grid3D& grid = psi.grid();
  const Grid1D& tr = grid.transverse();
  const std::size_t nt = tr.size();
  const double area = tr.spacing() * tr.spacing();
  std::vector<std::optional<double>> out(grid.axial().size());
  for (std::size_t ix = 0; ix < grid.axial().size(); ++ix) {
    double rho = 0.0;
    double moment = 0.0;
    for (std::size_t iy = 0; iy < nt; ++iy) {
      for (std::size_t iz = 0; iz < nt; ++iz) {
        const double d = std::norm(psi(ix, iy, iz));
        const double y = tr.node(iy);
        const double z = tr.node(iz);
        rho += d;
        moment += (y * y + z * z) * d;
      }
    }
    rho *= area;
    moment *= area;
    if (rho >= density_floor) out[ix] = moment / rho;
  }
  return out;
}

void set_solver_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

}  // namespace cqnp
