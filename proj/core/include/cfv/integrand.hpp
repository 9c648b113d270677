#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "cfv/interval.hpp"
#include "cfv/taylor.hpp"

namespace cfv {

/// A continuous function on [0, inf) that the quadrature engine can both
/// evaluate and enclose.
///
/// Built from a generic callable `f` that accepts `double`,
/// `Series<double>` and `Series<Interval>` (write it as a generic lambda with
/// `using std::exp;` so ADL picks the series overloads). The function must be
/// smooth between `kinks`; piecewise definitions may use `anchor(x)` to pick
/// the active piece.
class Integrand {
 public:
  template <class F>
  explicit Integrand(F f, std::vector<double> kinks = {})
      : value_([f](double t) { return static_cast<double>(f(t)); }),
        taylor_([f](double at, std::size_t order) {
          return f(Series<double>::variable(at, order)).coefficients();
        }),
        enclose_([f](Interval x, std::size_t order) {
          return f(Series<Interval>::variable(x, order)).coefficients();
        }),
        kinks_(std::move(kinks)) {}

  static Integrand constant(double c) {
    return Integrand([c](const auto& t) { return t * 0.0 + c; });
  }

  double operator()(double t) const { return value_(t); }

  /// f^(k)(at) / k! for k = 0..order.
  std::vector<double> taylor(double at, std::size_t order) const { return taylor_(at, order); }

  /// Enclosures of f^(k)(xi) / k! over xi in [a, b], k = 0..order.
  /// [a, b] must not contain a kink in its interior.
  std::vector<Interval> enclose(double a, double b, std::size_t order) const {
    return enclose_(Interval(a, b), order);
  }

  /// Points where f is continuous but not smooth.
  const std::vector<double>& kinks() const { return kinks_; }

 private:
  std::function<double(double)> value_;
  std::function<std::vector<double>(double, std::size_t)> taylor_;
  std::function<std::vector<Interval>(Interval, std::size_t)> enclose_;
  std::vector<double> kinks_;
};

}  // namespace cfv
