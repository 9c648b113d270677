#include "cfv/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace cfv {
namespace {

constexpr double kRootTolerance = 1e-14;

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

double bisect(std::span<const double> c, double lo, double hi, double f_lo) {
  const int s_lo = sign_of(f_lo);
  while (hi - lo > kRootTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = poly_eval(c, mid);
    if (f_mid == 0.0) return mid;
    if (sign_of(f_mid) == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double poly_eval(std::span<const double> c, double t) {
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
  return acc;
}

std::vector<double> poly_trim(std::vector<double> c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  return c;
}

bool poly_is_zero(std::span<const double> c) {
  return std::all_of(c.begin(), c.end(), [](double x) { return x == 0.0; });
}

std::vector<double> poly_derivative(std::span<const double> c) {
  if (c.size() <= 1) return {};
  std::vector<double> d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
  return d;
}

std::vector<double> poly_antiderivative(std::span<const double> c) {
  std::vector<double> a(c.size() + 1, 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) a[k + 1] = c[k] / static_cast<double>(k + 1);
  return a;
}

double poly_integral(std::span<const double> c, double a, double b) {
  const auto anti = poly_antiderivative(c);
  return poly_eval(anti, b) - poly_eval(anti, a);
}

std::vector<double> poly_shift(std::span<const double> c, double a) {
  // Repeated synthetic division by (t - a).
  std::vector<double> r(c.begin(), c.end());
  const std::size_t n = r.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t k = n - 1; k > i; --k) r[k - 1] += a * r[k];
  }
  return r;
}

double poly_abs_bound(std::span<const double> c, double a, double b) {
  const double x = std::max(std::abs(a), std::abs(b));
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + std::abs(c[k]);
  return acc;
}

std::vector<double> poly_sign_change_roots(std::span<const double> c_in, double a, double b) {
  const auto c = poly_trim(std::vector<double>(c_in.begin(), c_in.end()));
  if (c.size() <= 1 || !(a < b)) return {};
  if (c.size() == 2) {
    const double r = -c[0] / c[1];
    if (a < r && r < b) return {r};
    return {};
  }
  // Between consecutive extrema p is monotone, so each such span holds at most one root.
  const auto d = poly_derivative(c);
  std::vector<double> pts{a};
  for (double x : poly_sign_change_roots(d, a, b)) pts.push_back(x);
  pts.push_back(b);

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double f_lo = poly_eval(c, pts[i]);
    const double f_hi = poly_eval(c, pts[i + 1]);
    if (sign_of(f_lo) * sign_of(f_hi) < 0) roots.push_back(bisect(c, pts[i], pts[i + 1], f_lo));
  }
  return roots;
}

std::vector<SignSegment> poly_sign_segments(std::span<const double> c, double a, double b) {
  if (poly_is_zero(c)) return {{a, b, 0}};
  std::vector<double> cuts{a};
  for (double r : poly_sign_change_roots(c, a, b)) {
    if (r > cuts.back() && r < b) cuts.push_back(r);
  }
  cuts.push_back(b);

  std::vector<SignSegment> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    int s = sign_of(poly_eval(c, 0.5 * (lo + hi)));
    if (s == 0) s = sign_of(poly_eval(c, lo + 0.25 * (hi - lo)));
    if (s == 0) s = 1;
    if (!out.empty() && out.back().sign == s) {
      out.back().to = hi;
    } else {
      out.push_back({lo, hi, s});
    }
  }
  return out;
}

}  // namespace cfv
