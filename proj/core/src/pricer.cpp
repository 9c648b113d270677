#include "cfv/pricer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cfv/error.hpp"

namespace cfv {
namespace {

constexpr double kRateFloor = -0.999;
constexpr double kRateCap = 10.0;
constexpr std::size_t kMaxIterations = 200;

// PV at flat rate i with every payment discounted back to purchase_time.
Integrand discount_at_rate(double purchase_time, double rate) {
  const double growth = std::log1p(rate);
  return Integrand([growth, purchase_time](const auto& u) {
    using std::exp;
    return exp((u - purchase_time) * (-growth));
  });
}

// PV(rate) - target, accurate to tol near the root. Far from it a bracket at
// a relative tolerance already fixes the sign, which keeps extreme rates cheap.
double pv_residual(const CashFlow& gamma, double purchase_time, double rate, double target, double tol) {
  const double growth = std::log1p(rate);
  const double peak = std::max(std::exp((purchase_time - gamma.support_min()) * growth),
                               std::exp((purchase_time - gamma.support_max()) * growth));
  const double scale = peak * gamma.total_variation();
  if (!std::isfinite(scale)) return std::numeric_limits<double>::infinity();
  const Integrand f = discount_at_rate(purchase_time, rate);
  const double coarse_tol = 1e-9 * scale;
  if (coarse_tol > tol) {
    const BracketedValue coarse = integrate(f, gamma, coarse_tol);
    if (coarse.lower > target + tol || coarse.upper < target - tol) return coarse.value - target;
  }
  return integrate(f, gamma, tol).value - target;
}

}  // namespace

double default_tolerance(const CashFlow& gamma) { return 1e-10 * (1.0 + gamma.total_variation()); }

PriceResult price(const DiscountCurve& curve, const CashFlow& gamma, double tol) {
  if (!(tol > 0.0)) throw UsageError("price tolerance must be positive");
  if (gamma.support_max() > curve.horizon()) {
    throw DomainError("cash flow support extends to " + std::to_string(gamma.support_max()) +
                      ", beyond the curve horizon " + std::to_string(curve.horizon()));
  }
  return integrate(curve.integrand(), gamma, tol);
}

PriceResult price(const DiscountCurve& curve, const CashFlow& gamma) {
  return price(curve, gamma, default_tolerance(gamma));
}

PriceResult forward_price(const DiscountCurve& curve, const CashFlow& gamma, double t, double tol) {
  const double p_t = curve.discount(t);
  PriceResult r = price(curve, gamma, tol * p_t);
  for (double* x : {&r.value, &r.lower, &r.upper, &r.atom_part, &r.density_part}) *x /= p_t;
  return r;
}

double numeraire_price(const DiscountCurve& curve, const CashFlow& gamma, const CashFlow& numeraire, double tol) {
  if (numeraire.is_null() || !numeraire.is_nonnegative()) {
    throw UsageError("numeraire must be a nonnegative, non-null cash flow");
  }
  return price(curve, gamma, tol).value / price(curve, numeraire, tol).value;
}

YieldResult irr(const CashFlow& gamma, double purchase_time, double target_price, double tol) {
  if (!(tol > 0.0)) throw UsageError("yield tolerance must be positive");
  if (!(target_price > 0.0) || !std::isfinite(target_price)) throw UsageError("target price must be positive");
  if (gamma.is_null() || !gamma.is_nonnegative()) {
    throw UsageError("yield requires a nonnegative, non-null cash flow");
  }
  if (!std::isfinite(purchase_time) || purchase_time < 0.0 || purchase_time > gamma.support_min()) {
    throw UsageError("purchase time must lie in [0, min support]");
  }
  if (gamma.support_max() == purchase_time) {
    throw DomainError("cash flow is paid entirely at the purchase time; its yield is not determined");
  }

  const double quad_tol = tol / 16.0;
  auto residual = [&](double rate) {
    try {
      return pv_residual(gamma, purchase_time, rate, target_price, quad_tol);
    } catch (const DomainError&) {
      // (1+i)^(r-u) overflows near i = -1: the PV is effectively infinite.
      return std::numeric_limits<double>::infinity();
    }
  };

  double a = kRateFloor;
  double b = kRateCap;
  double fa = residual(a);
  double fb = residual(b);
  if (fb > 0.0 || fa < 0.0) {
    throw DomainError("target price " + std::to_string(target_price) +
                      " is outside the attainable present-value range for yields in (-0.999, 10]");
  }
  if (std::abs(fb) <= tol) return {b, fb, 0};

  // Brent's method: inverse quadratic / secant steps guarded by bisection.
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  for (std::size_t iter = 1; iter <= kMaxIterations; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double x_tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 1e-17;
    const double m = 0.5 * (c - b);
    if (std::abs(fb) <= tol) return {b, fb, iter};
    if (std::abs(m) <= x_tol) {
      throw DomainError("yield solver cannot reach residual tolerance " + std::to_string(tol));
    }
    if (std::abs(e) >= x_tol && std::abs(fa) > std::abs(fb) && std::isfinite(fa)) {
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      } else {
        p = -p;
      }
      if (2.0 * p < std::min(3.0 * m * q - std::abs(x_tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = d;
      }
    } else {
      d = m;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > x_tol ? d : (m > 0.0 ? x_tol : -x_tol);
    fb = residual(b);
  }
  throw DomainError("yield solver did not converge");
}

YieldBound yield_bound_check(const DiscountCurve& curve, const CashFlow& gamma, double purchase_time, double tol) {
  const double target = forward_price(curve, gamma, purchase_time, tol / 16.0).value;
  const YieldResult y = irr(gamma, purchase_time, target, tol);

  const double s = gamma.support_min();
  const double t = gamma.support_max();
  std::vector<double> grid;
  constexpr double kStep = 1e-3;
  const auto n = static_cast<std::size_t>(std::floor((t - s) / kStep));
  for (std::size_t k = 0; k <= n; ++k) grid.push_back(s + static_cast<double>(k) * kStep);
  grid.push_back(t);
  for (const auto& a : gamma.atoms()) grid.push_back(a.t);
  for (const auto& p : gamma.density()) {
    grid.push_back(p.from);
    grid.push_back(p.to);
  }

  double f_max = -std::numeric_limits<double>::infinity();
  for (double u : grid) f_max = std::max(f_max, forward_rate(curve, purchase_time, std::max(u, purchase_time)));
  return {y, f_max, y.rate <= f_max + tol};
}

}  // namespace cfv
