#include "cfv/discount_curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cfv/error.hpp"

namespace cfv {
namespace {

constexpr int kValidationSamples = 1000;

void require_time(double t, const char* name) {
  if (!std::isfinite(t) || t < 0.0) throw UsageError(std::string(name) + " must be a finite nonnegative time");
}

}  // namespace

DiscountCurve::DiscountCurve(Shape shape, double horizon, double level)
    : shape_(std::move(shape)), horizon_(horizon), level_(level) {
  if (!std::isfinite(horizon_) || horizon_ <= 0.0) throw UsageError("curve horizon must be positive and finite");
  if (!std::isfinite(level_) || level_ <= 0.0) throw UsageError("curve level must be positive and finite");
  log_level_ = level_ == 1.0 ? 0.0 : std::log(level_);

  if (const auto* flat = std::get_if<FlatRate>(&shape_)) {
    if (!std::isfinite(flat->rate) || flat->rate <= -1.0) throw UsageError("flat rate must be finite and > -1");
    flat_log_growth_ = std::log1p(flat->rate);
  } else if (const auto* grid = std::get_if<SpotGrid>(&shape_)) {
    const auto& k = grid->knots;
    if (k.size() < 2) throw UsageError("spot grid needs at least two knots");
    if (k.front().t != 0.0 || k.front().discount != 1.0) throw UsageError("spot grid must start at (0, 1)");
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (!std::isfinite(k[i].t) || !std::isfinite(k[i].discount) || k[i].discount <= 0.0) {
        throw UsageError("spot grid knot " + std::to_string(i) + " must have finite t and positive price");
      }
      if (i > 0 && !(k[i].t > k[i - 1].t)) throw UsageError("spot grid knot times must be strictly increasing");
    }
    for (const auto& knot : k) grid_log_.push_back(std::log(knot.discount));
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      grid_slope_.push_back((grid_log_[i + 1] - grid_log_[i]) / (k[i + 1].t - k[i].t));
    }
  } else {
    const auto& p = std::get<SvenssonParams>(shape_);
    for (double v : {p.beta0, p.beta1, p.beta2, p.beta3, p.tau1, p.tau2}) {
      if (!std::isfinite(v)) throw UsageError("Svensson parameters must be finite");
    }
    if (p.tau1 <= 0.0 || p.tau2 <= 0.0) throw UsageError("Svensson tau1 and tau2 must be positive");
  }
  validate();
}

void DiscountCurve::validate() const {
  for (int i = 0; i <= kValidationSamples; ++i) {
    const double t = horizon_ * i / kValidationSamples;
    const double p = discount(t);
    if (!std::isfinite(p) || p <= 0.0) {
      throw UsageError("curve is not strictly positive and bounded on [0, horizon] (t = " + std::to_string(t) + ")");
    }
  }
}

DiscountCurve DiscountCurve::flat(double rate, double horizon) { return {FlatRate{rate}, horizon, 1.0}; }

DiscountCurve DiscountCurve::spot_grid(std::vector<Knot> knots, double horizon) {
  return {SpotGrid{std::move(knots)}, horizon, 1.0};
}

DiscountCurve DiscountCurve::svensson(const SvenssonParams& params, double horizon) {
  return {params, horizon, 1.0};
}

DiscountCurve DiscountCurve::from_shape(Shape shape, double horizon, double level) {
  return {std::move(shape), horizon, level};
}

DiscountCurve DiscountCurve::scaled(double level) const { return {shape_, horizon_, level_ * level}; }

std::size_t DiscountCurve::segment(double t) const {
  const auto& k = std::get<SpotGrid>(shape_).knots;
  const auto it = std::upper_bound(k.begin(), k.end(), t, [](double x, const Knot& knot) { return x < knot.t; });
  const auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - k.begin() - 1, 0));
  return std::min(idx, k.size() - 2);
}

double DiscountCurve::log_discount(double t) const {
  require_time(t, "maturity");
  return log_discount_generic(t);
}

double DiscountCurve::discount(double t) const { return std::exp(log_discount(t)); }

std::vector<double> DiscountCurve::kinks() const {
  std::vector<double> out;
  if (const auto* grid = std::get_if<SpotGrid>(&shape_)) {
    for (std::size_t i = 1; i + 1 < grid->knots.size(); ++i) out.push_back(grid->knots[i].t);
  }
  return out;
}

Integrand DiscountCurve::integrand() const {
  return Integrand(
      [curve = *this](const auto& t) {
        using std::exp;
        return exp(curve.log_discount_generic(t));
      },
      kinks());
}

double DiscountCurve::slope_bound() const {
  const Integrand f = integrand();
  std::vector<double> cuts{0.0};
  for (double k : kinks()) {
    if (k > 0.0 && k < horizon_) cuts.push_back(k);
  }
  cuts.push_back(horizon_);
  double bound = 0.0;
  constexpr int kSubdivisions = 64;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double step = (cuts[i + 1] - cuts[i]) / kSubdivisions;
    for (int j = 0; j < kSubdivisions; ++j) {
      const double a = cuts[i] + j * step;
      const double b = j + 1 == kSubdivisions ? cuts[i + 1] : a + step;
      bound = std::max(bound, f.enclose(a, b, 1)[1].mag());
    }
  }
  return bound;
}

double discount(const DiscountCurve& curve, double t) { return curve.discount(t); }

double spot_rate(const DiscountCurve& curve, double t) {
  require_time(t, "maturity");
  if (t == 0.0) throw UsageError("spot rate is undefined at t = 0");
  return forward_rate(curve, 0.0, t);
}

double forward_rate(const DiscountCurve& curve, double s, double t) {
  require_time(s, "forward start");
  require_time(t, "forward end");
  if (s > t) throw UsageError("forward rate requires s <= t");
  if (s == t) return 0.0;
  return std::expm1((curve.log_discount(s) - curve.log_discount(t)) / (t - s));
}

double forward_discount(const DiscountCurve& curve, double t, double s) {
  require_time(t, "delivery time");
  require_time(s, "payment time");
  return std::exp(curve.log_discount(s) - curve.log_discount(t));
}

double forward_rate_composition_check(const DiscountCurve& curve, double r, double s, double t) {
  require_time(r, "r");
  require_time(s, "s");
  require_time(t, "t");
  const double whole = forward_rate(curve, r, r + s + t);
  const double first = forward_rate(curve, r, r + s);
  const double second = forward_rate(curve, r + s, r + s + t);
  const double lhs = std::exp((s + t) * std::log1p(whole));
  const double rhs = std::exp(s * std::log1p(first) + t * std::log1p(second));
  return std::abs(lhs - rhs) / std::abs(lhs);
}

}  // namespace cfv
