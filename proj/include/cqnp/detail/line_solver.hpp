#pragma once

#include <cstddef>
#include <vector>

namespace cqnp::detail {

// Constant-coefficient tridiagonal solve L x = R y on the interior of a line
// with homogeneous Dirichlet ends, where
//   L = tridiag(lhs_off, lhs_diag, lhs_off),  R = tridiag(rhs_off, rhs_diag, rhs_off).
// The Thomas factorization is computed once and reused for every line.
template <class T>
class LineSolver {
 public:
  LineSolver(std::size_t points, T lhs_diag, T lhs_off, T rhs_diag, T rhs_off)
      : points_(points), lhs_off_(lhs_off), rhs_diag_(rhs_diag), rhs_off_(rhs_off) {
    const std::size_t m = points - 2;
    c_prime_.resize(m);
    inv_pivot_.resize(m);
    T c_prev{};
    for (std::size_t k = 0; k < m; ++k) {
      const T pivot = k == 0 ? lhs_diag : lhs_diag - lhs_off * c_prev;
      inv_pivot_[k] = T(1) / pivot;
      c_prev = lhs_off * inv_pivot_[k];
      c_prime_[k] = c_prev;
    }
  }

  std::size_t points() const noexcept { return points_; }

  // Solves `width` interleaved lines in place: sample i of line j lives at
  // data[j + i * stride]. `scratch` must hold at least `width` values.
  // Boundary samples (i = 0 and i = points - 1) are set to zero.
  template <class U>
  void solve(U* data, std::size_t stride, std::size_t width, U* scratch) const {
    const std::size_t n = points_;
    U* first = data;
    U* last = data + (n - 1) * stride;
    for (std::size_t j = 0; j < width; ++j) {
      first[j] = U{};
      last[j] = U{};
      scratch[j] = U{};  // original value of the previous row
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const std::size_t k = i - 1;
      U* row = data + i * stride;
      const U* next = data + (i + 1) * stride;
      const U* prev = data + (i - 1) * stride;
      const T inv = inv_pivot_[k];
      if (k == 0) {
        for (std::size_t j = 0; j < width; ++j) {
          const U orig = row[j];
          const U d = rhs_diag_ * orig + rhs_off_ * (scratch[j] + next[j]);
          row[j] = d * inv;
          scratch[j] = orig;
        }
      } else {
        for (std::size_t j = 0; j < width; ++j) {
          const U orig = row[j];
          const U d = rhs_diag_ * orig + rhs_off_ * (scratch[j] + next[j]) - lhs_off_ * prev[j];
          row[j] = d * inv;
          scratch[j] = orig;
        }
      }
    }
    for (std::size_t i = n - 2; i-- > 1;) {
      U* row = data + i * stride;
      const U* next = data + (i + 1) * stride;
      const T c = c_prime_[i - 1];
      for (std::size_t j = 0; j < width; ++j) row[j] -= c * next[j];
    }
  }

 private:
  std::size_t points_;
  T lhs_off_;
  T rhs_diag_;
  T rhs_off_;
  std::vector<T> c_prime_;
  std::vector<T> inv_pivot_;
};

}  // namespace cqnp::detail
