#include "cqnp/grid.hpp"

#include <cmath>
#include <string>

#include "cqnp/error.hpp"

namespace cqnp {

Grid1D::Grid1D(double half_width, std::size_t points)
    : half_width_(half_width), points_(points), spacing_(0.0) {
  if (!std::isfinite(half_width) || half_width <= 0.0) {
    throw InvalidArgument("grid half-width must be finite and positive");
  }
  if (points < kMinPoints) {
    throw InvalidArgument("grid needs at least " + std::to_string(kMinPoints) + " points, got " +
                          std::to_string(points));
  }
  spacing_ = 2.0 * half_width / static_cast<double>(points - 1);
}

double Grid1D::node(std::size_t i) const noexcept {
  const double n1 = static_cast<double>(points_ - 1);
  return half_width_ * (2.0 * static_cast<double>(i) - n1) / n1;
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> x(points_);
  for (std::size_t i = 0; i < points_; ++i) x[i] = node(i);
  return x;
}

Grid3D::Grid3D(Grid1D axial, Grid1D transverse) : axial_(axial), transverse_(transverse) {
  if (transverse_.half_width() < kMinTransverseHalfWidth) {
    throw InvalidArgument("transverse half-width must be at least 6 oscillator lengths");
  }
}

}  // namespace cqnp
