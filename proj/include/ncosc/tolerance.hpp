#pragma once

#include <algorithm>
#include <cmath>

namespace ncosc {

// Default relative tolerance for comparisons and degeneracy tests.
inline constexpr double kDefaultTolerance = 1e-10;

// |a - b| <= rel * max(|a|, |b|) + abs_floor
inline bool approx_equal(double a, double b, double rel, double abs_floor = 0.0) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

inline double relative_difference(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace ncosc
