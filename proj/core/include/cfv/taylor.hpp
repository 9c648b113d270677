#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cfv/interval.hpp"

namespace cfv {

/// Truncated Taylor series c_0 + c_1 u + ... + c_n u^n around an expansion point.
///
/// With T = double this is forward-mode automatic differentiation: evaluating
/// a function on `Series<double>::variable(a, n)` yields f^(k)(a) / k!.
/// With T = Interval and an interval expansion point X, coefficient k encloses
/// f^(k)(xi) / k! for every xi in X, which is what Lagrange remainder bounds need.
template <class T>
class Series {
 public:
  Series(std::size_t order, T constant) : c_(order + 1, T(0.0)) { c_[0] = constant; }

  static Series variable(T at, std::size_t order) {
    Series s(order, at);
    if (order >= 1) s.c_[1] = T(1.0);
    return s;
  }

  std::size_t order() const { return c_.size() - 1; }
  const T& operator[](std::size_t k) const { return c_[k]; }
  T& operator[](std::size_t k) { return c_[k]; }
  const std::vector<T>& coefficients() const { return c_; }

  Series& operator+=(const Series& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] = c_[k] + o.c_[k];
    return *this;
  }
  Series& operator-=(const Series& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] = c_[k] - o.c_[k];
    return *this;
  }
  Series& operator*=(double x) {
    for (auto& v : c_) v = v * T(x);
    return *this;
  }

 private:
  std::vector<T> c_;
};

template <class T>
Series<T> operator+(Series<T> a, const Series<T>& b) { return a += b; }
template <class T>
Series<T> operator-(Series<T> a, const Series<T>& b) { return a -= b; }
template <class T>
Series<T> operator-(Series<T> a) { return a *= -1.0; }

template <class T>
Series<T> operator*(const Series<T>& a, const Series<T>& b) {
  const std::size_t n = a.order();
  Series<T> r(n, T(0.0));
  for (std::size_t k = 0; k <= n; ++k) {
    T acc(0.0);
    for (std::size_t j = 0; j <= k; ++j) acc = acc + a[j] * b[k - j];
    r[k] = acc;
  }
  return r;
}

template <class T>
Series<T> operator*(Series<T> a, double x) { return a *= x; }
template <class T>
Series<T> operator*(double x, Series<T> a) { return a *= x; }
template <class T>
Series<T> operator/(Series<T> a, double x) {
  for (std::size_t k = 0; k <= a.order(); ++k) a[k] = a[k] / T(x);
  return a;
}

template <class T>
Series<T> operator+(Series<T> a, double x) {
  a[0] = a[0] + T(x);
  return a;
}
template <class T>
Series<T> operator+(double x, Series<T> a) { return std::move(a) + x; }
template <class T>
Series<T> operator-(Series<T> a, double x) { return std::move(a) + (-x); }
template <class T>
Series<T> operator-(double x, Series<T> a) { return (-std::move(a)) + x; }

/// exp via e' = e * s': e_k = (1/k) sum_{j=1..k} j s_j e_{k-j}.
template <class T>
Series<T> exp(const Series<T>& s) {
  using std::exp;
  const std::size_t n = s.order();
  Series<T> e(n, exp(s[0]));
  for (std::size_t k = 1; k <= n; ++k) {
    T acc(0.0);
    for (std::size_t j = 1; j <= k; ++j) acc = acc + T(static_cast<double>(j)) * s[j] * e[k - j];
    e[k] = acc / T(static_cast<double>(k));
  }
  return e;
}

/// A representative point of the expansion: used by piecewise functions to pick
/// the active piece. Callers must not straddle a piece boundary.
inline double anchor(double x) { return x; }
inline double anchor(const Interval& x) { return x.mid(); }
template <class T>
double anchor(const Series<T>& s) { return anchor(s[0]); }

}  // namespace cfv
