#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace zonoreach {

// Closed interval. Arithmetic widens every result outward by a relative 1e-14 slack
// (plus the smallest denormal) so that floating-point rounding never loses soundness.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  Interval() = default;
  constexpr Interval(double v) : lower(v), upper(v) {}  // NOLINT(google-explicit-constructor)
  constexpr Interval(double lo, double hi) : lower(lo), upper(hi) {}

  [[nodiscard]] double width() const { return upper - lower; }
  [[nodiscard]] double mid() const { return 0.5 * (lower + upper); }
  [[nodiscard]] double mag() const { return std::max(std::abs(lower), std::abs(upper)); }
  [[nodiscard]] bool contains(double x) const { return lower <= x && x <= upper; }
  [[nodiscard]] bool contains_zero() const { return lower <= 0.0 && upper >= 0.0; }
};

inline Interval widen(double lo, double hi) {
  constexpr double rel = 1e-14;
  constexpr double tiny = std::numeric_limits<double>::denorm_min();
  return {lo - rel * std::abs(lo) - tiny, hi + rel * std::abs(hi) + tiny};
}

inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lower, b.lower), std::max(a.upper, b.upper)};
}

inline Interval operator+(const Interval& a, const Interval& b) { return widen(a.lower + b.lower, a.upper + b.upper); }
inline Interval operator-(const Interval& a, const Interval& b) { return widen(a.lower - b.upper, a.upper - b.lower); }
inline Interval operator-(const Interval& a) { return {-a.upper, -a.lower}; }

inline Interval operator*(const Interval& a, const Interval& b) {
  const double p1 = a.lower * b.lower;
  const double p2 = a.lower * b.upper;
  const double p3 = a.upper * b.lower;
  const double p4 = a.upper * b.upper;
  return widen(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

// Throws DomainError (declared in errors.hpp) when b contains zero; defined in expr.cpp.
Interval operator/(const Interval& a, const Interval& b);
Interval pow(const Interval& a, int k);
Interval sqrt(const Interval& a);

}  // namespace zonoreach
