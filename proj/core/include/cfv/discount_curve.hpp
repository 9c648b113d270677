#pragma once

#include <cmath>
#include <variant>
#include <vector>

#include "cfv/integrand.hpp"
#include "cfv/taylor.hpp"

namespace cfv {

inline constexpr double kDefaultHorizon = 100.0;

/// Effective annual rate i > -1: P_t = (1 + i)^(-t).
struct FlatRate {
  double rate;

  friend bool operator==(const FlatRate&, const FlatRate&) = default;
};

struct Knot {
  double t;
  double discount;

  friend bool operator==(const Knot&, const Knot&) = default;
};

/// Zero-coupon prices at knots; log P is interpolated linearly and the last
/// interval's continuously compounded forward is held beyond the last knot.
struct SpotGrid {
  std::vector<Knot> knots;

  friend bool operator==(const SpotGrid&, const SpotGrid&) = default;
};

/// Svensson zero yields, continuously compounded: P_t = exp(-t y(t)).
struct SvenssonParams {
  double beta0;
  double beta1;
  double beta2;
  double beta3;
  double tau1;
  double tau2;

  friend bool operator==(const SvenssonParams&, const SvenssonParams&) = default;
};

/// Unit zero-coupon bond price function t -> P_t.
///
/// Strictly positive and continuous everywhere, checked bounded up to the
/// declared horizon. P_0 = 1 unless the curve was produced by `scaled`, in
/// which case it is a positive weight function rather than a discount curve.
class DiscountCurve {
 public:
  using Shape = std::variant<FlatRate, SpotGrid, SvenssonParams>;

  static DiscountCurve flat(double rate, double horizon = kDefaultHorizon);
  static DiscountCurve spot_grid(std::vector<Knot> knots, double horizon = kDefaultHorizon);
  static DiscountCurve svensson(const SvenssonParams& params, double horizon = kDefaultHorizon);
  static DiscountCurve from_shape(Shape shape, double horizon = kDefaultHorizon, double level = 1.0);

  /// t -> level * P_t.
  DiscountCurve scaled(double level) const;

  double discount(double t) const;
  double log_discount(double t) const;

  /// log(level * P_t) for double, Series<double> or Series<Interval> arguments.
  template <class N>
  N log_discount_generic(const N& t) const;

  const Shape& shape() const { return shape_; }
  double horizon() const { return horizon_; }
  double level() const { return level_; }
  bool is_unit() const { return level_ == 1.0; }

  /// Points where P is continuous but not differentiable (interior spot-grid knots).
  std::vector<double> kinks() const;

  /// t -> P_t as a quadrature integrand.
  Integrand integrand() const;

  /// Certified upper bound on |dP/dt| over [0, horizon].
  double slope_bound() const;

  friend bool operator==(const DiscountCurve& a, const DiscountCurve& b) {
    return a.shape_ == b.shape_ && a.horizon_ == b.horizon_ && a.level_ == b.level_;
  }

 private:
  DiscountCurve(Shape shape, double horizon, double level);
  void validate() const;
  std::size_t segment(double t) const;

  Shape shape_;
  double horizon_;
  double level_;
  double log_level_ = 0.0;
  double flat_log_growth_ = 0.0;   // log(1 + i)
  std::vector<double> grid_log_;   // log P at knots
  std::vector<double> grid_slope_; // d log P / dt per knot interval
};

template <class N>
N DiscountCurve::log_discount_generic(const N& t) const {
  using std::exp;
  if (std::holds_alternative<FlatRate>(shape_)) {
    return t * (-flat_log_growth_) + log_level_;
  }
  if (const auto* grid = std::get_if<SpotGrid>(&shape_)) {
    const std::size_t k = segment(anchor(t));
    return (t - grid->knots[k].t) * grid_slope_[k] + (grid_log_[k] + log_level_);
  }
  const auto& p = std::get<SvenssonParams>(shape_);
  const N e1 = exp(t * (-1.0 / p.tau1));
  const N e2 = exp(t * (-1.0 / p.tau2));
  const N h1 = (1.0 - e1) * p.tau1;
  const N h2 = (1.0 - e2) * p.tau2;
  const N ty = t * p.beta0 + h1 * p.beta1 + (h1 - t * e1) * p.beta2 + (h2 - t * e2) * p.beta3;
  return ty * (-1.0) + log_level_;
}

double discount(const DiscountCurve& curve, double t);

/// Effective spot yield y_t = (1/P_t)^(1/t) - 1. Undefined at t = 0 (UsageError).
double spot_rate(const DiscountCurve& curve, double t);

/// Effective forward rate f_{s,t} = (P_s/P_t)^(1/(t-s)) - 1, with f_{t,t} = 0.
double forward_rate(const DiscountCurve& curve, double s, double t);

/// P_s / P_t: price for delivery at t of the unit bond maturing at s.
double forward_discount(const DiscountCurve& curve, double t, double s);

/// Relative residual of (1+f_{r,r+s+t})^(s+t) = (1+f_{r,r+s})^s (1+f_{r+s,r+s+t})^t.
double forward_rate_composition_check(const DiscountCurve& curve, double r, double s, double t);

}  // namespace cfv
