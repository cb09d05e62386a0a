#include "cqnp/width.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cqnp/error.hpp"

namespace cqnp {
namespace {

using std::complex;

constexpr double kFourThirds = 4.0 / 3.0;

// Discriminant in the radical form; A <= 0 means three real roots.
double cardano_discriminant(double p, double a5) noexcept {
  return 36.0 * a5 * a5 - 3.0 * p * p * p;
}

double polish(DensityArgs args, double s) noexcept {
  const double p = 1.0 + args.a3;
  double best = s;
  double best_res = std::abs(width_residual(args, s));
  for (int it = 0; it < 4 && best_res > 0.0; ++it) {
    const double deriv = 3.0 * best * best - p;
    if (deriv == 0.0) break;
    const double next = best - width_residual(args, best) / deriv;
    const double next_res = std::abs(width_residual(args, next));
    if (!(next_res < best_res)) break;
    best = next;
    best_res = next_res;
  }
  return best;
}

}  // namespace

std::string_view to_string(WidthStatus status) noexcept {
  return status == WidthStatus::Valid ? "valid" : "no_positive_root";
}

double width_residual(DensityArgs args, double s) noexcept {
  return s * s * s - s * (1.0 + args.a3) - kFourThirds * args.a5;
}

WidthStatus classify_region(DensityArgs args) noexcept {
  const double p = 1.0 + args.a3;
  // Three real roots: the largest is positive iff p > 0.
  // One real root: its sign is the sign of the root product (4/3) a5.
  if (cardano_discriminant(p, args.a5) <= 0.0) {
    return p > 0.0 ? WidthStatus::Valid : WidthStatus::NoPositiveRoot;
  }
  return args.a5 > 0.0 ? WidthStatus::Valid : WidthStatus::NoPositiveRoot;
}

WidthSolution solve_width(DensityArgs args) noexcept {
  WidthSolution out;
  out.status = classify_region(args);
  if (out.status != WidthStatus::Valid) {
    out.s = 0.0;
    out.residual = width_residual(args, 0.0);
    return out;
  }
  const double p = 1.0 + args.a3;
  const double q = kFourThirds * args.a5;
  double s;
  if (cardano_discriminant(p, args.a5) <= 0.0) {
    // Triple-angle form of the casus irreducibilis; k = 0 is the largest root.
    const double r = std::sqrt(p / 3.0);
    const double c = std::clamp(q / (2.0 * r * r * r), -1.0, 1.0);
    s = 2.0 * r * std::cos(std::acos(c) / 3.0);
  } else {
    const double disc = q * q / 4.0 - p * p * p / 27.0;
    const double u = std::cbrt(q / 2.0 + std::copysign(std::sqrt(disc), q));
    s = u == 0.0 ? 0.0 : u + p / (3.0 * u);
  }
  out.s = polish(args, s);
  out.residual = width_residual(args, out.s);
  return out;
}

CardanoRoots cardano_roots(DensityArgs args) noexcept {
  CardanoRoots out;
  const double p = 1.0 + args.a3;
  const double a = cardano_discriminant(p, args.a5);
  if (p == 0.0) {
    const double s = std::cbrt(kFourThirds * args.a5);
    out.degenerate = true;
    out.roots = {complex<double>(s), complex<double>(s), complex<double>(s)};
    out.selected = 0;
    out.status = s > 0.0 ? WidthStatus::Valid : WidthStatus::NoPositiveRoot;
    return out;
  }
  const complex<double> sqrt_a = std::sqrt(complex<double>(a));
  const complex<double> plus = 18.0 * args.a5 + 3.0 * sqrt_a;
  const complex<double> minus = 18.0 * args.a5 - 3.0 * sqrt_a;
  const complex<double> radicand = std::abs(plus) >= std::abs(minus) ? plus : minus;
  const complex<double> b0 = std::pow(radicand, 1.0 / 3.0);
  const complex<double> omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  complex<double> b = b0;
  for (std::size_t k = 0; k < 3; ++k) {
    out.cube_roots[k] = b;
    out.roots[k] = (b * b + 3.0 * p) / (3.0 * b);
    b *= omega;
  }

  // A <= 0: all three roots are real. A > 0: exactly one is real, the one with
  // the smallest imaginary part.
  std::size_t best = 0;
  if (a <= 0.0) {
    for (std::size_t k = 1; k < 3; ++k) {
      if (out.roots[k].real() > out.roots[best].real()) best = k;
    }
  } else {
    for (std::size_t k = 1; k < 3; ++k) {
      if (std::abs(out.roots[k].imag()) < std::abs(out.roots[best].imag())) best = k;
    }
  }
  out.selected = best;
  out.status = out.roots[best].real() > 0.0 ? WidthStatus::Valid : WidthStatus::NoPositiveRoot;
  return out;
}

double ClosedRange::sample(std::size_t i, std::size_t count) const noexcept {
  if (count <= 1) return lo;
  const double t = static_cast<double>(i) / static_cast<double>(count - 1);
  return i + 1 == count ? hi : lo + (hi - lo) * t;
}

std::vector<WidthMapRow> width_map(ClosedRange a3_range, ClosedRange a5_range,
                                   std::size_t resolution) {
  if (resolution < 2) throw InvalidArgument("width map resolution must be at least 2");
  for (double v : {a3_range.lo, a3_range.hi, a5_range.lo, a5_range.hi}) {
    if (!std::isfinite(v)) throw InvalidArgument("width map ranges must be finite");
  }
  std::vector<WidthMapRow> rows;
  rows.reserve(resolution * resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    const double a3 = a3_range.sample(i, resolution);
    for (std::size_t j = 0; j < resolution; ++j) {
      const double a5 = a5_range.sample(j, resolution);
      rows.push_back({a3, a5, solve_width({a3, a5})});
    }
  }
  return rows;
}

}  // namespace cqnp
