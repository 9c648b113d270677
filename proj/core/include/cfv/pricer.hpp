#pragma once

#include <cstddef>

#include "cfv/cashflow.hpp"
#include "cfv/discount_curve.hpp"
#include "cfv/quadrature.hpp"

namespace cfv {

/// pi(gamma) with its certified bracket.
using PriceResult = BracketedValue;

/// 1e-10 * (1 + |gamma|(R+)).
double default_tolerance(const CashFlow& gamma);

/// No-arbitrage price: integral of P_t against gamma.
///
/// Atoms are priced exactly as sum c_k P_{t_k}; density pieces go through the
/// certified quadrature. Throws DomainError when the support extends past the
/// curve horizon and UsageError for tol <= 0.
PriceResult price(const DiscountCurve& curve, const CashFlow& gamma, double tol);
PriceResult price(const DiscountCurve& curve, const CashFlow& gamma);

/// Time-t forward price pi(gamma) / P_t.
PriceResult forward_price(const DiscountCurve& curve, const CashFlow& gamma, double t, double tol);

/// pi(gamma) / pi(numeraire). The numeraire must be nonnegative and not null.
double numeraire_price(const DiscountCurve& curve, const CashFlow& gamma, const CashFlow& numeraire, double tol);

struct YieldResult {
  double rate;
  double residual;
  std::size_t iterations;
};

/// Constant effective rate i with integral (1+i)^(r-u) dgamma(u) = target_price.
///
/// gamma must be nonnegative, not null, and supported in [purchase_time, inf)
/// with some mass after purchase_time. The present value is strictly
/// decreasing in i, so the root in (-0.999, 10] is unique; it is bracketed and
/// found with Brent's method until |residual| <= tol. Throws DomainError when
/// the target lies outside the attainable range.
YieldResult irr(const CashFlow& gamma, double purchase_time, double target_price, double tol);

struct YieldBound {
  YieldResult yield;
  double f_max;
  bool holds;
};

/// Buys gamma at its forward price pi_r(gamma) and checks that its yield does
/// not beat max f_{r,u} over u in [min supp, max supp] (1e-3 grid plus every
/// atom time and piece endpoint).
YieldBound yield_bound_check(const DiscountCurve& curve, const CashFlow& gamma, double purchase_time, double tol);

}  // namespace cfv
