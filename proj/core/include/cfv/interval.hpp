#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "cfv/error.hpp"

namespace cfv {

/// Closed interval [lo, hi] with outward-rounded arithmetic.
///
/// Every operation widens its result by a few ulps so that the true real
/// result is enclosed even though the library math functions are not
/// correctly rounded. Enough for bracket certification; not a full
/// directed-rounding implementation.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr Interval() = default;
  constexpr Interval(double x) : lo(x), hi(x) {}  // NOLINT(google-explicit-constructor)
  constexpr Interval(double l, double h) : lo(l), hi(h) {}

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  double mag() const { return std::max(std::abs(lo), std::abs(hi)); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0.0 && hi >= 0.0; }
};

namespace detail {

inline double down(double x, int ulps = 1) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -std::numeric_limits<double>::infinity());
  return x;
}

inline double up(double x, int ulps = 1) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, std::numeric_limits<double>::infinity());
  return x;
}

inline Interval outward(double lo, double hi, int ulps = 1) { return {down(lo, ulps), up(hi, ulps)}; }

}  // namespace detail

inline Interval operator+(Interval a, Interval b) { return detail::outward(a.lo + b.lo, a.hi + b.hi); }
inline Interval operator-(Interval a, Interval b) { return detail::outward(a.lo - b.hi, a.hi - b.lo); }
inline Interval operator-(Interval a) { return {-a.hi, -a.lo}; }

inline Interval operator*(Interval a, Interval b) {
  const double p1 = a.lo * b.lo;
  const double p2 = a.lo * b.hi;
  const double p3 = a.hi * b.lo;
  const double p4 = a.hi * b.hi;
  return detail::outward(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

inline Interval operator/(Interval a, Interval b) {
  if (b.contains_zero()) throw DomainError("interval division by an interval containing zero");
  return a * detail::outward(1.0 / b.hi, 1.0 / b.lo);
}

inline Interval& operator+=(Interval& a, Interval b) { return a = a + b; }
inline Interval& operator-=(Interval& a, Interval b) { return a = a - b; }
inline Interval& operator*=(Interval& a, Interval b) { return a = a * b; }

inline Interval exp(Interval x) { return detail::outward(std::exp(x.lo), std::exp(x.hi), 2); }

inline Interval log(Interval x) {
  if (x.lo <= 0.0) throw DomainError("interval log of a non-positive interval");
  return detail::outward(std::log(x.lo), std::log(x.hi), 2);
}

/// Convex hull.
inline Interval hull(Interval a, Interval b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

}  // namespace cfv
