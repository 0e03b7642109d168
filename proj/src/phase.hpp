#pragma once

#include <cmath>
#include <numbers>

#include "cobos/fock.hpp"

namespace cobos::detail {

/// e^{i 2 pi r / d}, exact on quarter turns so that r = d/2 cancels to zero.
inline Complex unit_phase(long long r, long long d) {
  const long long m = ((r % d) + d) % d;
  if (m == 0) return {1.0, 0.0};
  if (2 * m == d) return {-1.0, 0.0};
  if (4 * m == d) return {0.0, 1.0};
  if (4 * m == 3 * d) return {0.0, -1.0};
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(d);
  return {std::cos(theta), std::sin(theta)};
}

}  // namespace cobos::detail
