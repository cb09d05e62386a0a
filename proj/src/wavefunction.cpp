#include "cqnp/wavefunction.hpp"

#include <cmath>

#include "cqnp/error.hpp"

namespace cqnp {
namespace {

double sum_abs_sq(std::span<const Complex> values) {
  double sum = 0.0;
  for (const Complex& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw InvalidArgument("wavefunction has non-finite samples");
    }
    sum += std::norm(v);
  }
  return sum;
}

template <class Field>
Field normalized_copy(const Field& field, double nsq) {
  if (!(nsq > 0.0)) throw InvalidArgument("cannot normalize a zero field");
  Field out = field;
  const double scale = 1.0 / std::sqrt(nsq);
  for (Complex& v : out.values()) v *= scale;
  return out;
}

}  // namespace

Wavefunction1D::Wavefunction1D(Grid1D grid) : grid_(grid), values_(grid.size()) {}

Wavefunction1D::Wavefunction1D(Grid1D grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidArgument("wavefunction sample count does not match the grid");
  }
}

std::vector<double> Wavefunction1D::density() const {
  std::vector<double> rho(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) rho[i] = std::norm(values_[i]);
  return rho;
}

Wavefunction3D::Wavefunction3D(Grid3D grid) : grid_(grid), values_(grid.size()) {}

Wavefunction3D::Wavefunction3D(Grid3D grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidArgument("wavefunction sample count does not match the grid");
  }
}

void CouplingParams::validate() const {
  if (!std::isfinite(g3) || !std::isfinite(g5) || !std::isfinite(lambda)) {
    throw InvalidArgument("couplings must be finite");
  }
  if (lambda < 0.0) throw InvalidArgument("axial trap strength must be non-negative");
}

double norm_sq(const Wavefunction1D& phi) {
  return sum_abs_sq(phi.values()) * phi.grid().spacing();
}

double norm_sq(const Wavefunction3D& psi) {
  return sum_abs_sq(psi.values()) * psi.grid().cell_volume();
}

Wavefunction1D normalize(const Wavefunction1D& phi) { return normalized_copy(phi, norm_sq(phi)); }

Wavefunction3D normalize(const Wavefunction3D& psi) { return normalized_copy(psi, norm_sq(psi)); }

}  // namespace cqnp
