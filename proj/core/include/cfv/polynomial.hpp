#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cfv {

/// Density pieces are polynomials in t, constant term first, of degree <= 8.
inline constexpr std::size_t kMaxDegree = 8;

double poly_eval(std::span<const double> c, double t);

/// Horner evaluation for any ring-like argument (double, Series<...>).
template <class N>
N poly_eval_generic(std::span<const double> c, const N& t) {
  if (c.empty()) return t * 0.0;
  N acc = t * 0.0 + c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * t + c[k];
  return acc;
}

/// Drops trailing zero coefficients; the zero polynomial becomes empty.
std::vector<double> poly_trim(std::vector<double> c);
bool poly_is_zero(std::span<const double> c);

std::vector<double> poly_derivative(std::span<const double> c);
std::vector<double> poly_antiderivative(std::span<const double> c);
double poly_integral(std::span<const double> c, double a, double b);

/// Coefficients of u -> p(a + u).
std::vector<double> poly_shift(std::span<const double> c, double a);

/// sum_k |c_k| * max(|a|,|b|)^k: scale of the Horner rounding error on [a, b].
double poly_abs_bound(std::span<const double> c, double a, double b);

/// Roots in (a, b) at which p changes sign, ascending, isolated to 1e-14 absolute.
/// Roots of even multiplicity (touching zero) are not reported.
std::vector<double> poly_sign_change_roots(std::span<const double> c, double a, double b);

struct SignSegment {
  double from;
  double to;
  int sign;  // +1, -1, or 0 for the zero polynomial
};

/// Partition of [a, b] into maximal segments of constant sign.
std::vector<SignSegment> poly_sign_segments(std::span<const double> c, double a, double b);

}  // namespace cfv
