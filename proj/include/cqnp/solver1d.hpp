#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "cqnp/detail/line_solver.hpp"
#include "cqnp/nonlinearity.hpp"
#include "cqnp/wavefunction.hpp"

namespace cqnp {

enum class TimeMode { Imaginary, Real };

std::string_view to_string(TimeMode mode) noexcept;

struct SolverConfig1D {
  Grid1D grid{20.0, 513};
  double dt = 1e-3;
  TimeMode mode = TimeMode::Imaginary;
  std::size_t max_iters = 200000;
  double mu_tol = 1e-9;
  NonlinearModel model{ModelKind::NPGeneral, 0.0, 0.0};
  double lambda = 0.1;

  /// Throws InvalidArgument on dt <= 0, mu_tol <= 0, max_iters == 0, or lambda < 0.
  void validate() const;
};

struct GroundStateResult {
  Wavefunction1D phi;
  double mu = 0.0;
  double energy = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Split-step propagator for the 1D equation with a cached Crank-Nicolson factor.
///
/// One step is Strang-split: a half-step pointwise factor exp(-dt/2 (V + N))
/// (times -i in real time), a full Crank-Nicolson solve for the kinetic part,
/// and a second half-step factor. Real time evaluates the second factor at the
/// updated density; imaginary time reuses the first and renormalizes to unit
/// norm afterwards.
class Propagator1D {
 public:
  explicit Propagator1D(const SolverConfig1D& config);

  /// Advances `phi` in place. Throws CollapseError with the axial location of
  /// the first node where the model has no valid multiplier, and
  /// DivergenceError when the norm stops being finite and positive.
  void step(Wavefunction1D& phi) const;

  const SolverConfig1D& config() const noexcept { return config_; }

 private:
  double multiplier(const Wavefunction1D& phi, std::size_t i) const;

  SolverConfig1D config_;
  std::vector<double> potential_;
  std::optional<detail::LineSolver<double>> imaginary_;
  std::optional<detail::LineSolver<Complex>> real_;
  mutable std::vector<double> factors_;
};

Wavefunction1D step_1d(const Wavefunction1D& phi, const SolverConfig1D& config);

/// mu = <phi, (-1/2 d^2/dx^2 + V + N) phi>.
double chemical_potential_1d(const Wavefunction1D& phi, const NonlinearModel& model, double lambda);

/// Normalized exp(-lambda x^2 / 2); lambda = 0 falls back to a unit Gaussian.
Wavefunction1D harmonic_guess_1d(const Grid1D& grid, double lambda);

/// Imaginary-time iteration of step_1d until |mu_k - mu_{k-1}| < mu_tol or
/// max_iters. The mode field of `config` is ignored.
GroundStateResult ground_state_1d(const SolverConfig1D& config,
                                  const std::optional<Wavefunction1D>& initial_guess = std::nullopt);

}  // namespace cqnp
