#pragma once

#include <algorithm>
#include <cmath>

namespace qbd {

/// p_n = 2 * max(1, round(alpha * sqrt(2n))).
inline int perimeter_sequence(long n, double alpha) {
  const long half = std::lround(alpha * std::sqrt(2.0 * static_cast<double>(n)));
  return static_cast<int>(2 * std::max(1L, half));
}

}  // namespace qbd
