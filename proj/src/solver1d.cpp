#include "cqnp/solver1d.hpp"

#include <cmath>

#include "cqnp/error.hpp"
#include "cqnp/kinetic.hpp"

namespace cqnp {
namespace {

double multiplier_at(const NonlinearModel& model, const Grid1D& grid, std::size_t i, double rho) {
  try {
    return model.multiplier(rho);
  } catch (const CollapseError& e) {
    throw CollapseError(std::string(e.what()) + " at x = " + std::to_string(grid.node(i)),
                        grid.node(i));
  }
}

double checked_norm_sq(const Wavefunction1D& phi) {
  double sum = 0.0;
  for (const Complex& v : phi.values()) sum += std::norm(v);
  sum *= phi.grid().spacing();
  if (!std::isfinite(sum) || !(sum > 0.0)) throw DivergenceError("1D field norm is not finite and positive");
  return sum;
}

}  // namespace

std::string_view to_string(TimeMode mode) noexcept {
  return mode == TimeMode::Imaginary ? "imaginary" : "real";
}

void SolverConfig1D::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time step must be positive");
  if (!(mu_tol > 0.0)) throw InvalidArgument("mu tolerance must be positive");
  if (max_iters == 0) throw InvalidArgument("max_iters must be at least 1");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be finite and >= 0");
}

Propagator1D::Propagator1D(const SolverConfig1D& config) : config_(config) {
  config_.validate();
  const Grid1D& grid = config_.grid;
  potential_.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) potential_[i] = axial_potential(grid.node(i), config_.lambda);
  if (config_.mode == TimeMode::Imaginary) {
    imaginary_.emplace(crank_nicolson_imaginary(grid, config_.dt));
  } else {
    real_.emplace(crank_nicolson_real(grid, config_.dt));
  }
}

double Propagator1D::multiplier(const Wavefunction1D& phi, std::size_t i) const {
  return potential_[i] + multiplier_at(config_.model, config_.grid, i, std::norm(phi[i]));
}

void Propagator1D::step(Wavefunction1D& phi) const {
  if (!(phi.grid() == config_.grid)) throw InvalidArgument("field grid does not match solver grid");
  const double half = 0.5 * config_.dt;
  Complex scratch;
  if (imaginary_) {
    // Both half-steps use the multiplier of the incoming density.
    factors_.resize(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) factors_[i] = std::exp(-half * multiplier(phi, i));
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] *= factors_[i];
    imaginary_->solve(phi.values().data(), 1, 1, &scratch);
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] *= factors_[i];
  } else {
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] *= std::polar(1.0, -half * multiplier(phi, i));
    real_->solve(phi.values().data(), 1, 1, &scratch);
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] *= std::polar(1.0, -half * multiplier(phi, i));
  }
  const double nsq = checked_norm_sq(phi);
  if (config_.mode == TimeMode::Imaginary) {
    const double scale = 1.0 / std::sqrt(nsq);
    for (Complex& v : phi.values()) v *= scale;
  }
}

Wavefunction1D step_1d(const Wavefunction1D& phi, const SolverConfig1D& config) {
  Wavefunction1D out = phi;
  Propagator1D(config).step(out);
  return out;
}

double chemical_potential_1d(const Wavefunction1D& phi, const NonlinearModel& model, double lambda) {
  const Grid1D& grid = phi.grid();
  double local = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double rho = std::norm(phi[i]);
    local += (axial_potential(grid.node(i), lambda) + multiplier_at(model, grid, i, rho)) * rho;
  }
  return kinetic_energy_1d(phi.values(), grid) + local * grid.spacing();
}

Wavefunction1D harmonic_guess_1d(const Grid1D& grid, double lambda) {
  const double k = lambda > 0.0 ? lambda : 1.0;
  Wavefunction1D phi(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.node(i);
    phi[i] = std::exp(-0.5 * k * x * x);
  }
  phi[0] = 0.0;
  phi[grid.size() - 1] = 0.0;
  return normalize(phi);
}

GroundStateResult ground_state_1d(const SolverConfig1D& config,
                                  const std::optional<Wavefunction1D>& initial_guess) {
  SolverConfig1D cfg = config;
  cfg.mode = TimeMode::Imaginary;
  const Propagator1D propagator(cfg);

  Wavefunction1D phi = initial_guess ? *initial_guess : harmonic_guess_1d(cfg.grid, cfg.lambda);
  if (!(phi.grid() == cfg.grid)) throw InvalidArgument("initial guess grid does not match solver grid");
  phi = normalize(phi);

  GroundStateResult result{phi};
  double mu_prev = chemical_potential_1d(phi, cfg.model, cfg.lambda);
  for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
    propagator.step(phi);
    const double mu = chemical_potential_1d(phi, cfg.model, cfg.lambda);
    if (!std::isfinite(mu)) throw DivergenceError("chemical potential became non-finite");
    result.iterations = it;
    const bool done = std::abs(mu - mu_prev) < cfg.mu_tol;
    mu_prev = mu;
    if (done) {
      result.converged = true;
      break;
    }
  }
  result.phi = phi;
  result.mu = mu_prev;
  result.energy = energy_1d(phi, cfg.model, cfg.lambda);
  if (!std::isfinite(result.energy)) throw DivergenceError("energy became non-finite");
  return result;
}

}  // namespace cqnp
