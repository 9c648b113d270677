#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cfv/cashflow.hpp"
#include "cfv/discount_curve.hpp"
#include "cfv/pricer.hpp"

namespace cfv {

/// Linear, strictly positive price functional that prices the atomic part of a
/// cash flow with f and its density part with a different weight g:
///
///   gamma -> integral g d(gamma_ac) + integral f d(gamma_singular).
///
/// It is arbitrage-free and normalized (pi(delta_0) = f(0) = 1), yet unless
/// f = g it disagrees with the integral of P_t = f(t) on flows with a density.
class DualFunctional {
 public:
  /// `atomic_curve` must satisfy P_0 = 1; `density_weight` only needs to be a
  /// positive continuous weight (no normalization at 0).
  DualFunctional(DiscountCurve atomic_curve, DiscountCurve density_weight);

  /// Preset "double-density": g = 2 f.
  static DualFunctional double_density(const DiscountCurve& f);

  const DiscountCurve& atomic_curve() const { return f_; }
  const DiscountCurve& density_weight() const { return g_; }
  double horizon() const;

 private:
  DiscountCurve f_;
  DiscountCurve g_;
};

PriceResult dual_price(const DualFunctional& df, const CashFlow& gamma, double tol);

/// dual_price - price under the atomic curve. Zero exactly when gamma has no
/// density or f = g on the density support.
double choquet_gap(const DualFunctional& df, const CashFlow& gamma, double tol);

struct PositivityReport {
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;

  bool ok() const { return failed == 0 && passed == trials; }
};

/// Random trials of the no-arbitrage properties of the functional: strictly
/// positive lower bracket on nonnegative flows, pi(delta_0) = 1, and linearity
/// on random signed pairs. Failures are reported, never thrown.
PositivityReport verify_na_positivity(const DualFunctional& df, std::size_t trials, std::uint64_t seed);

}  // namespace cfv
