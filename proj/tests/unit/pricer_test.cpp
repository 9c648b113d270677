#include <gtest/gtest.h>

#include <cmath>

#include "cfv/error.hpp"
#include "cfv/pricer.hpp"
#include "cfv/random_flows.hpp"
#include "oracles.hpp"

using namespace cfv;

namespace {

// mpmath, 30 digits.
constexpr double kAnnuity10 = 7.72173492918481251282906202791;
constexpr double kContinuous10 = 7.91320859504571131814029276082;

CashFlow annuity(int n) {
  CashFlow g;
  for (int k = 1; k <= n; ++k) g = g + CashFlow::dirac(k);
  return g;
}

}  // namespace

TEST(Price, DiscreteAnnuityIsExact) {
  const PriceResult r = price(DiscountCurve::flat(0.05), annuity(10));
  EXPECT_NEAR(r.value, kAnnuity10, 1e-12 * kAnnuity10);
  EXPECT_EQ(r.lower, r.value);
  EXPECT_EQ(r.upper, r.value);
  EXPECT_EQ(r.density_part, 0.0);
}

TEST(Price, ContinuousAnnuity) {
  const PriceResult r = price(DiscountCurve::flat(0.05), CashFlow::uniform(0.0, 10.0), 1e-10);
  EXPECT_LE(r.width(), 1e-10);
  EXPECT_TRUE(r.contains(kContinuous10));
  EXPECT_EQ(r.atom_part, 0.0);
  EXPECT_EQ(r.value, r.atom_part + r.density_part);
}

TEST(Price, UnitAndNull) {
  for (const auto& c : {DiscountCurve::flat(0.07), DiscountCurve::svensson({0.03, 0.01, 0, 0, 1, 2})}) {
    EXPECT_EQ(price(c, CashFlow::dirac(0.0)).value, 1.0);
    EXPECT_EQ(price(c, CashFlow{}).value, 0.0);
  }
}

TEST(Price, Errors) {
  const DiscountCurve c = DiscountCurve::flat(0.05, 20.0);
  EXPECT_THROW(price(c, CashFlow::dirac(25.0)), DomainError);
  EXPECT_THROW(price(c, CashFlow::dirac(1.0), 0.0), UsageError);
}

TEST(Price, SpotGridAgainstSimpson) {
  const DiscountCurve c = DiscountCurve::spot_grid({{0, 1.0}, {1, 0.97}, {2, 0.935}, {5, 0.84}, {10, 0.70}});
  const CashFlow g = CashFlow::density(0.5, 7.5, {2.0, -0.1});
  // Simpson on each knot interval separately, where P is smooth.
  long double reference = 0.0L;
  const double cuts[] = {0.5, 1.0, 2.0, 5.0, 7.5};
  for (int i = 0; i + 1 < 5; ++i) {
    reference += oracle::simpson([&](long double t) { return (2.0L - 0.1L * t) * c.discount(static_cast<double>(t)); },
                                 cuts[i], cuts[i + 1], 20000);
  }
  const PriceResult r = price(c, g, 1e-10);
  EXPECT_NEAR(r.value, static_cast<double>(reference), 2e-10);
  EXPECT_TRUE(r.lower <= static_cast<double>(reference) + 1e-12 && static_cast<double>(reference) - 1e-12 <= r.upper);
}

TEST(ForwardPrice, Basics) {
  const DiscountCurve c = DiscountCurve::flat(0.05);
  const CashFlow g = CashFlow::dirac(3.0, 2.0) + CashFlow::uniform(1.0, 4.0);
  const double tol = 1e-10;
  EXPECT_NEAR(forward_price(c, g, 0.0, tol).value, price(c, g, tol).value, 2 * tol);
  EXPECT_NEAR(forward_price(c, CashFlow::dirac(5.0), 2.0, tol).value, c.discount(5.0) / c.discount(2.0), 1e-15);
  const PriceResult fp = forward_price(c, g, 2.0, tol);
  EXPECT_LE(fp.width(), tol * (1.0 + 1e-12));
}

TEST(NumerairePrice, ChangeOfNumeraire) {
  const DiscountCurve c = DiscountCurve::flat(0.04);
  const CashFlow g = CashFlow::dirac(3.0) + CashFlow::uniform(0.0, 2.0, 0.5);
  const double tol = 1e-11;
  const double spot = price(c, g, tol).value;
  EXPECT_NEAR(numeraire_price(c, g, CashFlow::dirac(0.0), tol), spot, 2 * tol);
  EXPECT_NEAR(numeraire_price(c, g, CashFlow::dirac(4.0), tol), forward_price(c, g, 4.0, tol).value, 1e-10);
  EXPECT_NEAR(numeraire_price(c, g, CashFlow::dirac(0.0, 2.0), tol), spot / 2.0, 2 * tol);
  EXPECT_THROW(numeraire_price(c, g, -1.0 * CashFlow::dirac(1.0), tol), UsageError);
  EXPECT_THROW(numeraire_price(c, g, CashFlow{}, tol), UsageError);
}

TEST(Irr, SingleBond) {
  const YieldResult y = irr(CashFlow::dirac(1.0), 0.0, 1.0 / 1.05, 1e-13);
  EXPECT_NEAR(y.rate, 0.05, 1e-12);
  EXPECT_LE(std::abs(y.residual), 1e-13);
  EXPECT_NEAR(irr(CashFlow::dirac(1.0), 0.0, 1.0, 1e-13).rate, 0.0, 1e-12);
}

TEST(Irr, AnnuitySelfConsistency) {
  const double tol = 1e-10 * 11.0;
  const YieldResult y = irr(annuity(10), 0.0, kAnnuity10, tol);
  EXPECT_NEAR(y.rate, 0.05, 1e-9);
  const YieldResult yc = irr(CashFlow::uniform(0.0, 10.0), 0.0, kContinuous10, tol);
  EXPECT_NEAR(yc.rate, 0.05, 1e-9);
  EXPECT_LE(std::abs(yc.residual), tol);
}

TEST(Irr, DeferredPurchase) {
  // Bought at r = 2 for its forward price under 3%: the yield is 3%.
  const DiscountCurve c = DiscountCurve::flat(0.03);
  const CashFlow g = CashFlow::dirac(4.0) + CashFlow::uniform(5.0, 8.0, 2.0);
  const double tol = 1e-10;
  const double target = forward_price(c, g, 2.0, tol / 16).value;
  EXPECT_NEAR(irr(g, 2.0, target, tol).rate, 0.03, 1e-9);
}

TEST(Irr, Errors) {
  EXPECT_THROW(irr(CashFlow{}, 0.0, 1.0, 1e-10), UsageError);
  EXPECT_THROW(irr(-1.0 * CashFlow::dirac(1.0), 0.0, 1.0, 1e-10), UsageError);
  EXPECT_THROW(irr(CashFlow::dirac(1.0), 2.0, 1.0, 1e-10), UsageError);
  EXPECT_THROW(irr(CashFlow::dirac(1.0), 0.0, -1.0, 1e-10), UsageError);
  EXPECT_THROW(irr(CashFlow::dirac(0.0), 0.0, 1.0, 1e-10), DomainError);
  // (1+i)^-1 = 2000 needs i < -0.999.
  EXPECT_THROW(irr(CashFlow::dirac(1.0), 0.0, 2000.0, 1e-10), DomainError);
  // Any yield in range gives more than 1e-3.
  EXPECT_THROW(irr(CashFlow::dirac(1.0), 0.0, 1e-3, 1e-10), DomainError);
}

TEST(YieldBound, FlatCurveYieldEqualsRate) {
  const DiscountCurve c = DiscountCurve::flat(0.045);
  const YieldBound b = yield_bound_check(c, CashFlow::dirac(2.0) + CashFlow::uniform(3.0, 6.0), 1.0, 1e-10);
  EXPECT_TRUE(b.holds);
  EXPECT_NEAR(b.yield.rate, 0.045, 1e-9);
  EXPECT_NEAR(b.f_max, 0.045, 1e-12);
}

TEST(YieldBound, SingleAtomYieldIsTheForwardRate) {
  const DiscountCurve c = DiscountCurve::spot_grid({{0, 1.0}, {1, 0.98}, {3, 0.92}, {6, 0.80}});
  const YieldBound b = yield_bound_check(c, CashFlow::dirac(5.0), 0.5, 1e-10);
  EXPECT_TRUE(b.holds);
  EXPECT_NEAR(b.yield.rate, forward_rate(c, 0.5, 5.0), 1e-9);
}
