#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cqnp/solver1d.hpp"
#include "cqnp/wavefunction.hpp"

namespace cqnp {

struct SolverConfig3D {
  Grid3D grid{Grid1D{20.0, 257}, Grid1D{8.0, 65}};
  double dt = 2e-3;
  std::size_t max_iters = 200000;
  double mu_tol = 1e-8;
  /// Steps between chemical-potential evaluations; convergence compares the
  /// per-step average |mu_k - mu_{k-m}| / m against mu_tol.
  std::size_t check_interval = 10;
  CouplingParams couplings{};

  void validate() const;
};

struct GroundState3D {
  Wavefunction3D psi;
  double mu = 0.0;
  double energy = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Axial density rho(x) = int int |psi|^2 dy dz on the axial grid.
struct AxialProfile {
  Grid1D grid;
  std::vector<double> density;
};

/// One Strang-split step of the 3D equation
///   i psi_t = -1/2 lap psi + [V(y,z) + V(x) + 2 pi g3 |psi|^2 + 3 pi^2 g5 |psi|^4] psi:
/// half-step multiplier, Crank-Nicolson sweeps along x then y then z, half-step
/// multiplier. Imaginary mode renormalizes. Throws DivergenceError when the
/// field stops being finite.
Wavefunction3D step_3d(const Wavefunction3D& psi, const SolverConfig3D& config, TimeMode mode);

/// Imaginary-time ground state. Starts from `initial_guess` when given and
/// from separable_guess_3d otherwise.
GroundState3D ground_state_3d(const SolverConfig3D& config,
                              const std::optional<Wavefunction3D>& initial_guess = std::nullopt);

double chemical_potential_3d(const Wavefunction3D& psi, const CouplingParams& couplings);

/// E = int [ |grad psi|^2/2 + V |psi|^2 + pi g3 |psi|^4 + pi^2 g5 |psi|^6 ].
double energy_3d(const Wavefunction3D& psi, const CouplingParams& couplings);

/// psi = exp(-(y^2+z^2)/(2 sigma^2)) / (sqrt(pi) sigma) * phi(x), phi sampled on the axial grid.
Wavefunction3D gaussian_ansatz(const Grid3D& grid, std::span<const Complex> axial, double sigma);

/// Unit transverse Gaussian times the normalized axial harmonic Gaussian.
Wavefunction3D separable_guess_3d(const Grid3D& grid, double lambda);

AxialProfile project_axial(const Wavefunction3D& psi);

/// sigma^2(x) = int int (y^2+z^2)|psi|^2 dy dz / rho(x); empty where rho(x) < floor.
std::vector<std::optional<double>> transverse_width_profile(const Wavefunction3D& psi,
                                                            double density_floor = 1e-10);

/// Sets the worker count used for independent line solves (OpenMP builds only).
/// Results do not depend on it.
void set_solver_threads(int threads);

}  // namespace cqnp
