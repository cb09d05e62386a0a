#pragma once

#include <cstddef>
#include <vector>

namespace cqnp {

/// Uniform grid on [-L, L] with n nodes, both endpoints included.
class Grid1D {
 public:
  static constexpr std::size_t kMinPoints = 16;

  Grid1D(double half_width, std::size_t points);

  double half_width() const noexcept { return half_width_; }
  std::size_t size() const noexcept { return points_; }
  double spacing() const noexcept { return spacing_; }

  /// x_i = -L + i h, evaluated so that x_{n-1-i} == -x_i exactly.
  double node(std::size_t i) const noexcept;
  std::vector<double> nodes() const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double half_width_;
  std::size_t points_;
  double spacing_;
};

/// Axial grid along x and one transverse grid shared by y and z.
class Grid3D {
 public:
  static constexpr double kMinTransverseHalfWidth = 6.0;

  Grid3D(Grid1D axial, Grid1D transverse);

  const Grid1D& axial() const noexcept { return axial_; }
  const Grid1D& transverse() const noexcept { return transverse_; }

  std::size_t size() const noexcept {
    return axial_.size() * transverse_.size() * transverse_.size();
  }
  double cell_volume() const noexcept {
    return axial_.spacing() * transverse_.spacing() * transverse_.spacing();
  }
  /// Row-major with z fastest: (ix * ny + iy) * nz + iz.
  std::size_t index(std::size_t ix, std::size_t iy, std::size_t iz) const noexcept {
    const std::size_t nt = transverse_.size();
    return (ix * nt + iy) * nt + iz;
  }

  friend bool operator==(const Grid3D&, const Grid3D&) = default;

 private:
  Grid1D axial_;
  Grid1D transverse_;
};

}  // namespace cqnp
