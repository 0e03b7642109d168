#pragma once

// Small dense-vector helpers shared by the solvers.

#include <cmath>
#include <span>
#include <vector>

#include "cobos/fock.hpp"

namespace cobos::detail {

using Vec = std::vector<Complex>;

inline Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double norm2(std::span<const Complex> a) {
  double s = 0.0;
  for (const auto& x : a) s += std::norm(x);
  return std::sqrt(s);
}

inline void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scale_vec(Complex alpha, std::span<Complex> x) {
  for (auto& v : x) v *= alpha;
}

/// Removes the components along `basis` (assumed orthonormal), two passes.
inline void orthogonalize(std::span<Complex> w, const std::vector<Vec>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& v : basis) axpy(-dot(v, w), v, w);
}

/// Fixes the global phase so the first component with at least half the
/// largest magnitude is real and positive.
inline void fix_phase(std::span<Complex> v) {
  double biggest = 0.0;
  for (const auto& x : v) biggest = std::max(biggest, std::abs(x));
  if (biggest == 0.0) return;
  for (const auto& x : v) {
    if (std::abs(x) >= 0.5 * biggest) {
      const Complex phase = std::conj(x) / std::abs(x);
      scale_vec(phase, v);
      return;
    }
  }
}

}  // namespace cobos::detail
