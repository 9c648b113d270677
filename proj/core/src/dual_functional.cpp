#include "cfv/dual_functional.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cfv/error.hpp"
#include "cfv/random_flows.hpp"

namespace cfv {

DualFunctional::DualFunctional(DiscountCurve atomic_curve, DiscountCurve density_weight)
    : f_(std::move(atomic_curve)), g_(std::move(density_weight)) {
  if (!f_.is_unit()) throw UsageError("the atomic curve f must satisfy f(0) = 1");
}

DualFunctional DualFunctional::double_density(const DiscountCurve& f) { return {f, f.scaled(2.0)}; }

double DualFunctional::horizon() const { return std::min(f_.horizon(), g_.horizon()); }

PriceResult dual_price(const DualFunctional& df, const CashFlow& gamma, double tol) {
  if (!(tol > 0.0)) throw UsageError("price tolerance must be positive");
  if (gamma.support_max() > df.horizon()) throw DomainError("cash flow support extends beyond the horizon");
  const LebesguePair parts = lebesgue_decompose(gamma);
  const PriceResult singular = integrate(df.atomic_curve().integrand(), parts.singular, tol);
  const PriceResult ac = integrate(df.density_weight().integrand(), parts.ac, tol);
  PriceResult r;
  r.atom_part = singular.atom_part;
  r.density_part = ac.density_part;
  r.value = r.atom_part + r.density_part;
  r.lower = std::min(r.atom_part + ac.lower, r.value);
  r.upper = std::max(r.atom_part + ac.upper, r.value);
  return r;
}

double choquet_gap(const DualFunctional& df, const CashFlow& gamma, double tol) {
  return dual_price(df, gamma, tol).value - price(df.atomic_curve(), gamma, tol).value;
}

PositivityReport verify_na_positivity(const DualFunctional& df, std::size_t trials, std::uint64_t seed) {
  PositivityReport report;
  report.trials = trials;
  FlowSampler sampler(seed, std::min(30.0, df.horizon()));

  auto fail = [&report](std::size_t trial, const std::string& what) {
    std::ostringstream msg;
    msg << "trial " << trial << ": " << what;
    report.failures.push_back(msg.str());
  };

  const double unit = dual_price(df, CashFlow::dirac(0.0), 1e-12).value;
  const bool normalized = unit == 1.0;

  for (std::size_t i = 0; i < trials; ++i) {
    bool ok = true;
    if (i == 0 && !normalized) {
      fail(i, "pi(delta_0) != 1");
      ok = false;
    }
    try {
      const CashFlow gamma = sampler.nonnegative();
      const double tol = default_tolerance(gamma);
      const PriceResult p = dual_price(df, gamma, tol);
      if (!(p.lower > 0.0)) {
        fail(i, "nonnegative flow has non-positive lower bracket");
        ok = false;
      }

      const CashFlow g1 = sampler.signed_flow();
      const CashFlow g2 = sampler.signed_flow();
      const double a = sampler.uniform(-3.0, 3.0);
      const double b = sampler.uniform(-3.0, 3.0);
      const double lin_tol = std::max({default_tolerance(g1), default_tolerance(g2), default_tolerance(a * g1 + b * g2)});
      const double lhs = dual_price(df, a * g1 + b * g2, lin_tol).value;
      const double rhs = a * dual_price(df, g1, lin_tol).value + b * dual_price(df, g2, lin_tol).value;
      if (std::abs(lhs - rhs) > (std::abs(a) + std::abs(b) + 1.0) * lin_tol) {
        fail(i, "linearity violated");
        ok = false;
      }
    } catch (const std::exception& e) {
      fail(i, e.what());
      ok = false;
    }
    if (ok) {
      ++report.passed;
    } else {
      ++report.failed;
    }
  }
  return report;
}

}  // namespace cfv
