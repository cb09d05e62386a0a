#pragma once

#include <complex>
#include <span>

#include "cqnp/detail/line_solver.hpp"
#include "cqnp/grid.hpp"

namespace cqnp {

// The kinetic operator -1/2 d^2/dx^2 is discretized with the fourth-order
// compact three-point scheme K = -1/2 M^{-1} D2, where
//   D2 = tridiag(1, -2, 1) / h^2,   M = tridiag(1, 10, 1) / 12,
// and Dirichlet zeros at both ends. M and D2 commute, so K is symmetric
// positive definite and every Crank-Nicolson factor stays tridiagonal.

inline constexpr double kCompactDiag = 10.0 / 12.0;
inline constexpr double kCompactOff = 1.0 / 12.0;

/// Solver applying K itself: M w = -1/2 D2 psi.
detail::LineSolver<double> kinetic_apply_solver(const Grid1D& grid);

/// Crank-Nicolson factor for one step of `dt`:
/// imaginary time (I + dt/2 K) psi' = (I - dt/2 K) psi,
/// real time      (I + i dt/2 K) psi' = (I - i dt/2 K) psi.
detail::LineSolver<double> crank_nicolson_imaginary(const Grid1D& grid, double dt);
detail::LineSolver<std::complex<double>> crank_nicolson_real(const Grid1D& grid, double dt);

/// <phi, K phi> h for a 1D field (real by symmetry of K).
double kinetic_energy_1d(std::span<const std::complex<double>> phi, const Grid1D& grid);

}  // namespace cqnp
