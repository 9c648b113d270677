#include <gtest/gtest.h>

#include <cmath>

#include "cfv/error.hpp"
#include "cfv/fx_market.hpp"
#include "cfv/pricer.hpp"
#include "cfv/random_flows.hpp"

using namespace cfv;

namespace {

DualCurrencyMarket sample_market() {
  return {DiscountCurve::flat(0.01), DiscountCurve::flat(0.03), 0.9};
}

CashFlow annuity10() {
  CashFlow a;
  for (int k = 1; k <= 10; ++k) a = a + CashFlow::dirac(k);
  return a;
}

}  // namespace

TEST(FxMarket, ForwardAtOneYear) {
  EXPECT_NEAR(fx_forward(sample_market(), 1.0), 0.882524271844660194, 1e-15);
}

TEST(FxMarket, ForwardAtZeroIsSpotExactly) {
  const DualCurrencyMarket m(DiscountCurve::svensson({0.04, -0.02, 0.01, 0.015, 2, 8}), DiscountCurve::flat(0.02), 1.37);
  EXPECT_EQ(fx_forward(m, 0.0), 1.37);
}

TEST(FxMarket, CoveredInterestParity) {
  const DualCurrencyMarket m = sample_market();
  for (double t : {0.25, 1.0, 3.5, 10.0, 40.0}) {
    const double lhs = fx_forward(m, t) * m.domestic_curve().discount(t);
    const double rhs = m.spot_fx() * m.foreign_curve().discount(t);
    EXPECT_NEAR(lhs, rhs, 1e-14 * rhs);
  }
}

TEST(FxMarket, Validation) {
  EXPECT_THROW(DualCurrencyMarket(DiscountCurve::flat(0.01), DiscountCurve::flat(0.01), 0.0), UsageError);
  EXPECT_THROW(DualCurrencyMarket(DiscountCurve::flat(0.01), DiscountCurve::flat(0.01), -1.0), UsageError);
  EXPECT_THROW(DualCurrencyMarket(DiscountCurve::flat(0.01).scaled(2.0), DiscountCurve::flat(0.01), 1.0), UsageError);
  EXPECT_THROW(fx_forward(sample_market(), -1.0), UsageError);
}

TEST(FxMarket, PriceDualOnUnitFlows) {
  const DualCurrencyMarket m = sample_market();
  EXPECT_NEAR(price_dual(m, {CashFlow::dirac(0.0), CashFlow{}}, Currency::domestic, 1e-12).value, 1.0, 1e-15);
  EXPECT_NEAR(price_dual(m, {CashFlow{}, CashFlow::dirac(0.0)}, Currency::domestic, 1e-12).value, 0.9, 1e-15);
  EXPECT_NEAR(price_dual(m, {CashFlow::dirac(0.0), CashFlow{}}, Currency::foreign, 1e-12).value, 1.0 / 0.9, 1e-15);
}

TEST(FxMarket, DollarAnnuityInEuro) {
  const DualCurrencyMarket m(DiscountCurve::flat(0.02), DiscountCurve::flat(0.05), 0.9);
  const PriceResult r = price_dual(m, {CashFlow{}, annuity10()}, Currency::domestic, 1e-12);
  EXPECT_NEAR(r.value, 6.94956143626633126, 1e-12);
}

TEST(FxMarket, CurrencyConsistency) {
  const DualCurrencyMarket m = sample_market();
  FlowSampler s(31, 30.0);
  for (int i = 0; i < 50; ++i) {
    const DualCashFlow f{s.signed_flow(), s.signed_flow()};
    const double tol = default_tolerance(f.domestic) + default_tolerance(f.foreign);
    const PriceResult d = price_dual(m, f, Currency::domestic, tol);
    const PriceResult e = price_dual(m, f, Currency::foreign, tol);
    EXPECT_NEAR(e.value * m.spot_fx(), d.value, 2.0 * tol);
  }
}

TEST(FxConversion, IdenticalCurvesScaleBySpot) {
  const DualCurrencyMarket m(DiscountCurve::flat(0.02), DiscountCurve::flat(0.02), 1.25);
  const CashFlow g = CashFlow::density(0, 4, {1.0, 0.5}) + CashFlow::dirac(2.0, 3.0);
  const ConvertedFlow c = convert_measure(m, g);
  EXPECT_EQ(c.flow, scale(g, 1.25));
  EXPECT_EQ(c.fit_error, 0.0);
}

TEST(FxConversion, AtomsUseForwardAtTheirTime) {
  const DualCurrencyMarket m = sample_market();
  const ConvertedFlow c = convert_measure(m, CashFlow::dirac(1.0, 2.0));
  ASSERT_EQ(c.flow.atoms().size(), 1u);
  EXPECT_NEAR(c.flow.atoms()[0].amount, 2.0 * 0.882524271844660194, 1e-15);
}

TEST(FxConversion, RouteEquivalence) {
  const DualCurrencyMarket m(DiscountCurve::svensson({0.04, -0.02, 0.01, 0.015, 2, 8}), DiscountCurve::flat(0.01), 0.9);
  FlowSampler s(32, 30.0);
  for (int i = 0; i < 60; ++i) {
    const CashFlow g = s.signed_flow();
    const ConvertedFlow c = convert_measure(m, g);
    const double tol = default_tolerance(g);
    const PriceResult via_domestic = price(m.domestic_curve(), c.flow, tol);
    const PriceResult via_foreign = price(m.foreign_curve(), g, tol / m.spot_fx());
    const double direct = m.spot_fx() * via_foreign.value;
    const double allowance = 2.0 * tol + c.fit_error;
    EXPECT_NEAR(via_domestic.value, direct, allowance) << "trial " << i;
  }
}

TEST(FxConversion, PositiveFlowsStayPositive) {
  const DualCurrencyMarket m = sample_market();
  FlowSampler s(33, 30.0);
  for (int i = 0; i < 60; ++i) {
    const CashFlow g = s.nonnegative();
    const ConvertedFlow c = convert_measure(m, g);
    EXPECT_GT(price(m.domestic_curve(), c.flow, default_tolerance(c.flow)).lower, 0.0);
  }
}
