#pragma once

#include <algorithm>
#include <cmath>

namespace pmpd {

/// Absolute slack for metric (triangle inequality) checks.
inline constexpr double kTriangleEps = 1e-9;
/// Absolute and relative slack used by every travel/revisit time comparison.
inline constexpr double kAbsEps = 1e-9;
inline constexpr double kRelEps = 1e-9;

/// Infinite operands contribute no relative slack, so comparisons against
/// an infinite sentinel behave like exact ones.
inline double slack(double a, double b) {
  auto mag = [](double x) { return std::isfinite(x) ? std::abs(x) : 0.0; };
  return kAbsEps + kRelEps * std::max(mag(a), mag(b));
}

inline bool approx_eq(double a, double b) { return std::abs(a - b) <= slack(a, b); }
inline bool approx_le(double a, double b) { return a <= b + slack(a, b); }
inline bool definitely_lt(double a, double b) { return a < b - slack(a, b); }
inline bool definitely_gt(double a, double b) { return a > b + slack(a, b); }

}  // namespace pmpd
