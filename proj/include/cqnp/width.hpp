#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace cqnp {

/// Local density arguments of the width cubic: a3 = g3 |phi|^2, a5 = g5 |phi|^4.
struct DensityArgs {
  double a3 = 0.0;
  double a5 = 0.0;
};

enum class WidthStatus { Valid, NoPositiveRoot };

std::string_view to_string(WidthStatus status) noexcept;

/// Squared transverse width s = sigma^2 solving
///   s^3 - s (1 + a3) - (4/3) a5 = 0.
struct WidthSolution {
  double s = 0.0;
  WidthStatus status = WidthStatus::NoPositiveRoot;
  double residual = 0.0;

  bool valid() const noexcept { return status == WidthStatus::Valid; }
};

/// Left side of the width cubic at s.
double width_residual(DensityArgs args, double s) noexcept;

/// Largest real positive root of the width cubic (the branch through s = 1 at
/// the origin), Newton-polished. Status is NoPositiveRoot when none exists.
WidthSolution solve_width(DensityArgs args) noexcept;

/// Radical (Cardano) form of the width cubic evaluated in complex arithmetic:
///   B_k = (18 a5 + 3 sqrt(A))^{1/3} on each of the three cube-root branches,
///   A   = 36 a5^2 - 3 (1 + a3)^3,
///   s_k = (B_k^2 + 3 (1 + a3)) / (3 B_k).
/// The sqrt(A) branch is the one maximizing |18 a5 + 3 sqrt(A)|; both branches
/// give the same root set. No polishing is applied.
struct CardanoRoots {
  std::array<std::complex<double>, 3> cube_roots{};
  std::array<std::complex<double>, 3> roots{};
  /// Index of the selected root (largest real root), meaningful when Valid.
  std::size_t selected = 0;
  WidthStatus status = WidthStatus::NoPositiveRoot;
  /// The a3 = -1 corner where B vanishes and s = cbrt(4 a5 / 3).
  bool degenerate = false;

  double s() const noexcept { return roots[selected].real(); }
};

CardanoRoots cardano_roots(DensityArgs args) noexcept;

/// First-order weak-coupling width sigma ~ 1 + a3/4 + a5/3. This is sigma, not s.
constexpr double weak_width(DensityArgs args) noexcept {
  return 1.0 + args.a3 / 4.0 + args.a5 / 3.0;
}

/// Valid iff the width cubic has a real positive root.
WidthStatus classify_region(DensityArgs args) noexcept;

struct ClosedRange {
  double lo = 0.0;
  double hi = 0.0;

  /// i-th of `count` evenly spaced samples; lo when count == 1.
  double sample(std::size_t i, std::size_t count) const noexcept;
};

struct WidthMapRow {
  double a3;
  double a5;
  WidthSolution solution;
};

/// resolution x resolution evaluations, a3 major and a5 minor.
/// Throws InvalidArgument for resolution < 2 or non-finite ranges.
std::vector<WidthMapRow> width_map(ClosedRange a3_range, ClosedRange a5_range,
                                   std::size_t resolution);

}  // namespace cqnp
