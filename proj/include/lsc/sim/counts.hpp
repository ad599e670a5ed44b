#pragma once

#include <cmath>
#include <cstddef>

namespace lsc {

// floor(fraction * n), tolerant of representation error in decimal
// fractions: 0.29 * 100 evaluates to 28.999999999999996 but means 29.
inline std::size_t floor_count(double fraction, std::size_t n) {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
}

}  // namespace lsc
