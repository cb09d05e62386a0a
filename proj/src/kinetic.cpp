#include "cqnp/kinetic.hpp"

#include <vector>

namespace cqnp {

detail::LineSolver<double> kinetic_apply_solver(const Grid1D& grid) {
  const double h2 = grid.spacing() * grid.spacing();
  return {grid.size(), kCompactDiag, kCompactOff, 1.0 / h2, -0.5 / h2};
}

detail::LineSolver<double> crank_nicolson_imaginary(const Grid1D& grid, double dt) {
  const double beta = dt / (4.0 * grid.spacing() * grid.spacing());
  return {grid.size(), kCompactDiag + 2.0 * beta, kCompactOff - beta, kCompactDiag - 2.0 * beta,
          kCompactOff + beta};
}

detail::LineSolver<std::complex<double>> crank_nicolson_real(const Grid1D& grid, double dt) {
  using C = std::complex<double>;
  const C ibeta{0.0, dt / (4.0 * grid.spacing() * grid.spacing())};
  return {grid.size(), kCompactDiag + 2.0 * ibeta, kCompactOff - ibeta,
          kCompactDiag - 2.0 * ibeta, kCompactOff + ibeta};
}

double kinetic_energy_1d(std::span<const std::complex<double>> phi, const Grid1D& grid) {
  std::vector<std::complex<double>> w(phi.begin(), phi.end());
  std::complex<double> scratch;
  kinetic_apply_solver(grid).solve(w.data(), 1, 1, &scratch);
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += (std::conj(phi[i]) * w[i]).real();
  return sum * grid.spacing();
}

}  // namespace cqnp
