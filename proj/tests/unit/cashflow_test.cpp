#include <gtest/gtest.h>

#include "cfv/cashflow.hpp"
#include "cfv/error.hpp"
#include "cfv/polynomial.hpp"
#include "cfv/random_flows.hpp"

using namespace cfv;

TEST(CashFlow, EqualAtomsMerge) {
  const CashFlow c = CashFlow::dirac(1.0) + CashFlow::dirac(1.0);
  ASSERT_EQ(c.atoms().size(), 1u);
  EXPECT_EQ(c.atoms()[0], (Atom{1.0, 2.0}));
}

TEST(CashFlow, CancellationGivesNull) {
  EXPECT_TRUE((CashFlow::dirac(1.0) - CashFlow::dirac(1.0)).is_null());
}

TEST(CashFlow, OverlappingDensitiesSplitAtBoundaries) {
  const CashFlow c = CashFlow::uniform(0.0, 2.0) + CashFlow::uniform(1.0, 3.0);
  ASSERT_EQ(c.density().size(), 3u);
  EXPECT_EQ(c.density()[0], (DensityPiece{0.0, 1.0, {1.0}}));
  EXPECT_EQ(c.density()[1], (DensityPiece{1.0, 2.0, {2.0}}));
  EXPECT_EQ(c.density()[2], (DensityPiece{2.0, 3.0, {1.0}}));
  EXPECT_DOUBLE_EQ(mass(c, 0.0, 1.0, Ends::closed), 1.0);
  EXPECT_DOUBLE_EQ(mass(c, 1.0, 2.0, Ends::closed), 2.0);
  EXPECT_DOUBLE_EQ(mass(c, 2.0, 3.0, Ends::closed), 1.0);
}

TEST(CashFlow, AdjacentIdenticalPiecesMerge) {
  const CashFlow c = CashFlow::uniform(0.0, 1.0) + CashFlow::uniform(1.0, 2.0);
  ASSERT_EQ(c.density().size(), 1u);
  EXPECT_EQ(c.density()[0], (DensityPiece{0.0, 2.0, {1.0}}));
}

TEST(CashFlow, Scale) {
  EXPECT_EQ(scale(CashFlow::dirac(2.0), 3.0), CashFlow::dirac(2.0, 3.0));
  const CashFlow g = CashFlow::dirac(1.0, 0.5) + CashFlow::density(0.0, 2.0, {1.0, -0.25});
  EXPECT_TRUE(scale(g, 0.0).is_null());
  EXPECT_EQ(scale(scale(g, 2.0), 0.5), g);
}

TEST(CashFlow, RejectsInvalidInput) {
  EXPECT_THROW(CashFlow::dirac(-1.0), UsageError);
  EXPECT_THROW(CashFlow::density(2.0, 1.0, {1.0}), UsageError);
  EXPECT_THROW(CashFlow::density(0.0, 1.0, std::vector<double>(10, 1.0)), UsageError);
  EXPECT_THROW(CashFlow::dirac(1.0, std::nan("")), UsageError);
  EXPECT_THROW(CashFlow::dirac(kInfinity), UsageError);
}

TEST(CashFlow, ZeroAtomsAreNeverStored) {
  const CashFlow c({{1.0, 0.0}, {2.0, 1.0}}, {});
  ASSERT_EQ(c.atoms().size(), 1u);
  EXPECT_EQ(c.atoms()[0].t, 2.0);
}

TEST(CashFlow, SupportAndTotals) {
  const CashFlow c = CashFlow::dirac(0.5, -2.0) + CashFlow::density(1.0, 4.0, {-1.0, 0.5});
  EXPECT_DOUBLE_EQ(c.support_min(), 0.5);
  EXPECT_DOUBLE_EQ(c.support_max(), 4.0);
  // density t/2 - 1 on [1,4): -1/4 below t = 2, +1 above.
  EXPECT_NEAR(c.total_mass(), -2.0 + 0.75, 1e-15);
  EXPECT_NEAR(c.total_variation(), 2.0 + 1.25, 1e-15);
  EXPECT_FALSE(c.is_nonnegative());
  EXPECT_DOUBLE_EQ(CashFlow{}.support_max(), 0.0);
}

TEST(Jordan, AtomsOfOppositeSign) {
  const JordanPair j = jordan(CashFlow::dirac(1.0) - 2.0 * CashFlow::dirac(3.0));
  EXPECT_EQ(j.positive, CashFlow::dirac(1.0));
  EXPECT_EQ(j.negative, CashFlow::dirac(3.0, 2.0));
}

TEST(Jordan, DensitySplitsAtRoot) {
  const JordanPair j = jordan(CashFlow::density(0.0, 2.0, {-1.0, 1.0}));
  EXPECT_EQ(j.positive, CashFlow::density(1.0, 2.0, {-1.0, 1.0}));
  EXPECT_EQ(j.negative, CashFlow::density(0.0, 1.0, {1.0, -1.0}));
  EXPECT_DOUBLE_EQ(j.positive.total_mass(), 0.5);
  EXPECT_DOUBLE_EQ(j.negative.total_mass(), 0.5);
}

TEST(Jordan, NullMeasure) {
  const JordanPair j = jordan(CashFlow{});
  EXPECT_TRUE(j.positive.is_null());
  EXPECT_TRUE(j.negative.is_null());
}

TEST(Jordan, ReconstructsAndIsMutuallySingular) {
  FlowSampler sampler(101);
  for (int trial = 0; trial < 200; ++trial) {
    const CashFlow g = sampler.signed_flow();
    const JordanPair j = jordan(g);
    EXPECT_TRUE(j.positive.is_nonnegative());
    EXPECT_TRUE(j.negative.is_nonnegative());
    // Exact reconstruction up to the isolated roots, which carry no mass.
    const CashFlow back = j.positive - j.negative;
    EXPECT_EQ(back.atoms(), g.atoms());
    for (const auto& p : g.density()) {
      for (int k = 0; k < 1000; ++k) {
        const double t = p.from + (p.to - p.from) * (k + 0.5) / 1000.0;
        double pos = 0.0;
        double neg = 0.0;
        for (const auto& q : j.positive.density()) {
          if (q.from <= t && t < q.to) pos = poly_eval(q.coeffs, t);
        }
        for (const auto& q : j.negative.density()) {
          if (q.from <= t && t < q.to) neg = poly_eval(q.coeffs, t);
        }
        ASSERT_EQ(std::min(pos, neg), 0.0) << "overlap at t = " << t;
        EXPECT_NEAR(pos - neg, poly_eval(p.coeffs, t), 1e-12 * (1.0 + poly_abs_bound(p.coeffs, p.from, p.to)));
      }
    }
  }
}

TEST(Lebesgue, SplitsAtomsFromDensity) {
  const CashFlow g = CashFlow::dirac(1.0) + CashFlow::uniform(0.0, 1.0);
  const LebesguePair l = lebesgue_decompose(g);
  EXPECT_EQ(l.ac, CashFlow::uniform(0.0, 1.0));
  EXPECT_EQ(l.singular, CashFlow::dirac(1.0));
  EXPECT_EQ(l.ac + l.singular, g);
  EXPECT_TRUE(lebesgue_decompose(CashFlow{}).ac.is_null());
}

TEST(Lebesgue, IsLinear) {
  FlowSampler sampler(202);
  for (int trial = 0; trial < 200; ++trial) {
    const CashFlow a = sampler.signed_flow();
    const CashFlow b = sampler.signed_flow();
    const LebesguePair lhs = lebesgue_decompose(2.0 * a + b);
    const LebesguePair la = lebesgue_decompose(a);
    const LebesguePair lb = lebesgue_decompose(b);
    EXPECT_EQ(lhs.ac, 2.0 * la.ac + lb.ac);
    EXPECT_EQ(lhs.singular, 2.0 * la.singular + lb.singular);
  }
}

TEST(Trace, HalfOpenInterval) {
  const CashFlow g = CashFlow::dirac(1.0) + CashFlow::dirac(2.0);
  EXPECT_EQ(trace(g, 1.0, 2.0, Ends::open_closed), CashFlow::dirac(2.0));
  EXPECT_EQ(trace(g, 1.0, 2.0, Ends::closed_open), CashFlow::dirac(1.0));
  EXPECT_TRUE(trace(g, 1.0, 2.0, Ends::open).is_null());
  EXPECT_EQ(trace(g, 1.0, 2.0, Ends::closed), g);
}

TEST(Trace, FullAxisIsIdentity) {
  FlowSampler sampler(303);
  for (int i = 0; i < 20; ++i) {
    const CashFlow g = sampler.signed_flow();
    EXPECT_EQ(trace(g, 0.0, kInfinity, Ends::closed), g);
  }
}

TEST(Trace, DensityClipped) {
  const CashFlow t = trace(CashFlow::uniform(0.0, 3.0), 1.0, 2.0, Ends::open_closed);
  EXPECT_EQ(t, CashFlow::uniform(1.0, 2.0));
  EXPECT_DOUBLE_EQ(t.total_mass(), 1.0);
  EXPECT_THROW(trace(t, 2.0, 1.0, Ends::closed), UsageError);
}

TEST(Mass, DistributionFunction) {
  EXPECT_DOUBLE_EQ(distribution(CashFlow::dirac(0.0), 0.0), 1.0);
  EXPECT_DOUBLE_EQ(mass(CashFlow::uniform(0.0, 7.0), 0.0, 7.0, Ends::closed), 7.0);
  EXPECT_DOUBLE_EQ(mass(CashFlow::dirac(1.0) - CashFlow::dirac(1.0), 0.0, 5.0, Ends::closed), 0.0);
  // mu((s, t]) = F(t) - F(s)
  const CashFlow g = CashFlow::dirac(1.0, 2.0) + CashFlow::density(0.0, 4.0, {1.0, 1.0});
  EXPECT_NEAR(mass(g, 1.0, 3.0, Ends::open_closed), distribution(g, 3.0) - distribution(g, 1.0), 1e-14);
}

TEST(VectorSpace, Axioms) {
  FlowSampler sampler(404);
  for (int trial = 0; trial < 200; ++trial) {
    const CashFlow a = sampler.signed_flow();
    const CashFlow b = sampler.signed_flow();
    const CashFlow c = sampler.signed_flow();
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(2.0 * (a + b), 2.0 * a + 2.0 * b);
    EXPECT_EQ((0.5 + 0.25) * a, 0.5 * a + 0.25 * a);
    EXPECT_TRUE((a - a).is_null());
    EXPECT_EQ(a + CashFlow{}, a);
  }
}
