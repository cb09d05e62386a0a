#pragma once

#include <complex>
#include <span>
#include <vector>

#include "cqnp/grid.hpp"

namespace cqnp {

using Complex = std::complex<double>;

class Wavefunction1D {
 public:
  /// Zero field on `grid`.
  explicit Wavefunction1D(Grid1D grid);
  Wavefunction1D(Grid1D grid, std::vector<Complex> values);

  const Grid1D& grid() const noexcept { return grid_; }
  std::span<const Complex> values() const noexcept { return values_; }
  std::span<Complex> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  Complex operator[](std::size_t i) const noexcept { return values_[i]; }
  Complex& operator[](std::size_t i) noexcept { return values_[i]; }

  /// |phi_i|^2 at every node.
  std::vector<double> density() const;

 private:
  Grid1D grid_;
  std::vector<Complex> values_;
};

class Wavefunction3D {
 public:
  explicit Wavefunction3D(Grid3D grid);
  Wavefunction3D(Grid3D grid, std::vector<Complex> values);

  const Grid3D& grid() const noexcept { return grid_; }
  std::span<const Complex> values() const noexcept { return values_; }
  std::span<Complex> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  Complex operator()(std::size_t ix, std::size_t iy, std::size_t iz) const noexcept {
    return values_[grid_.index(ix, iy, iz)];
  }
  Complex& operator()(std::size_t ix, std::size_t iy, std::size_t iz) noexcept {
    return values_[grid_.index(ix, iy, iz)];
  }

 private:
  Grid3D grid_;
  std::vector<Complex> values_;
};

/// Two-body coupling g3, three-body coupling g5, and axial trap strength.
struct CouplingParams {
  double g3 = 0.0;
  double g5 = 0.0;
  double lambda = 0.0;

  /// Throws InvalidArgument on non-finite entries or negative lambda.
  void validate() const;
};

/// Sum |field|^2 times the cell volume. Throws InvalidArgument on non-finite samples.
double norm_sq(const Wavefunction1D& phi);
double norm_sq(const Wavefunction3D& psi);

/// Rescaled copy with unit norm. Throws InvalidArgument for a zero field.
Wavefunction1D normalize(const Wavefunction1D& phi);
Wavefunction3D normalize(const Wavefunction3D& psi);

/// V(x) = (lambda x)^2 / 2.
constexpr double axial_potential(double x, double lambda) noexcept {
  const double lx = lambda * x;
  return 0.5 * lx * lx;
}

/// V(y, z) = (y^2 + z^2) / 2, unit transverse frequency.
constexpr double transverse_potential(double y, double z) noexcept {
  return 0.5 * (y * y + z * z);
}

}  // namespace cqnp
