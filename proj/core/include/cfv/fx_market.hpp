#pragma once

#include "cfv/cashflow.hpp"
#include "cfv/discount_curve.hpp"
#include "cfv/pricer.hpp"

namespace cfv {

enum class Currency { domestic, foreign };

/// Two currencies, each with its own discount curve, and the spot rate in
/// domestic units per one foreign unit.
class DualCurrencyMarket {
 public:
  DualCurrencyMarket(DiscountCurve domestic_curve, DiscountCurve foreign_curve, double spot_fx);

  const DiscountCurve& domestic_curve() const { return domestic_; }
  const DiscountCurve& foreign_curve() const { return foreign_; }
  double spot_fx() const { return spot_; }
  /// The shorter of the two curve horizons.
  double horizon() const { return horizon_; }

  friend bool operator==(const DualCurrencyMarket&, const DualCurrencyMarket&) = default;

 private:
  DiscountCurve domestic_;
  DiscountCurve foreign_;
  double spot_;
  double horizon_;
};

struct DualCashFlow {
  CashFlow domestic;
  CashFlow foreign;
};

/// Forward FX for delivery at t: spot * P_t(foreign) / P_t(domestic).
double fx_forward(const DualCurrencyMarket& m, double t);

/// Price of the pair in one currency: domestic price plus spot times foreign
/// price, or that divided by spot for the foreign currency.
PriceResult price_dual(const DualCurrencyMarket& m, const DualCashFlow& flow, Currency in, double tol);

struct ConvertedFlow {
  CashFlow flow;
  /// Certified bound on the total variation of (exact - returned) density.
  double fit_error = 0.0;
};

/// Domestic flow with density fx_forward(t) relative to the foreign flow.
///
/// Atoms are scaled by the forward rate at their time. Each density piece is
/// multiplied by the forward curve and refitted as a Chebyshev interpolant of
/// the lowest degree <= 8 whose certified sup-norm error is within 1e-10 of
/// the piece's magnitude, bisecting when no degree does (DomainError after 1024 sub-pieces). Identical
/// curves make the forward rate constant and the conversion exact.
ConvertedFlow convert_measure(const DualCurrencyMarket& m, const CashFlow& foreign_gamma);

}  // namespace cfv
