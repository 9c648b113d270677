#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cfv/polynomial.hpp"

using namespace cfv;

TEST(Polynomial, EvaluatesConstantTermFirst) {
  const std::vector<double> p{1.0, -3.0, 2.0};  // 2t^2 - 3t + 1
  EXPECT_DOUBLE_EQ(poly_eval(p, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(poly_eval(p, 2.0), 3.0);
  EXPECT_DOUBLE_EQ(poly_eval({}, 5.0), 0.0);
}

TEST(Polynomial, TrimDropsTrailingZeros) {
  EXPECT_EQ(poly_trim({1.0, 2.0, 0.0, 0.0}), (std::vector<double>{1.0, 2.0}));
  EXPECT_TRUE(poly_trim({0.0, 0.0}).empty());
  EXPECT_TRUE(poly_is_zero(std::vector<double>{0.0, 0.0}));
}

TEST(Polynomial, DerivativeAndAntiderivative) {
  const std::vector<double> p{1.0, 2.0, 3.0};
  EXPECT_EQ(poly_derivative(p), (std::vector<double>{2.0, 6.0}));
  EXPECT_EQ(poly_antiderivative(p), (std::vector<double>{0.0, 1.0, 1.0, 1.0}));
  // int_1^3 (1 + 2t + 3t^2) dt = 2 + 8 + 26
  EXPECT_DOUBLE_EQ(poly_integral(p, 1.0, 3.0), 36.0);
}

TEST(Polynomial, ShiftMatchesDirectEvaluation) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> p(1 + trial % 9);
    for (double& c : p) c = u(rng);
    const double a = u(rng) * 3.0;
    const std::vector<double> s = poly_shift(p, a);
    for (double x : {-1.0, 0.0, 0.25, 1.5}) {
      EXPECT_NEAR(poly_eval(s, x), poly_eval(p, a + x), 1e-10 * (1.0 + poly_abs_bound(p, a - 1.0, a + 1.5)));
    }
  }
}

TEST(Polynomial, SignChangeRootsOfCubic) {
  // (t-1)(t-2)(t-3) = t^3 - 6t^2 + 11t - 6
  const std::vector<double> p{-6.0, 11.0, -6.0, 1.0};
  const auto roots = poly_sign_change_roots(p, 0.0, 4.0);
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_NEAR(roots[0], 1.0, 1e-13);
  EXPECT_NEAR(roots[1], 2.0, 1e-13);
  EXPECT_NEAR(roots[2], 3.0, 1e-13);
}

TEST(Polynomial, TouchingZeroIsNotASignChange) {
  // (t-1)^2 (t-3)
  const std::vector<double> p{-3.0, 7.0, -5.0, 1.0};
  const auto roots = poly_sign_change_roots(p, 0.0, 4.0);
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_NEAR(roots[0], 3.0, 1e-13);
}

TEST(Polynomial, SignSegmentsPartitionTheInterval) {
  const std::vector<double> p{-1.0, 1.0};  // t - 1
  const auto seg = poly_sign_segments(p, 0.0, 2.0);
  ASSERT_EQ(seg.size(), 2u);
  EXPECT_EQ(seg[0].sign, -1);
  EXPECT_EQ(seg[1].sign, +1);
  EXPECT_DOUBLE_EQ(seg[0].from, 0.0);
  EXPECT_DOUBLE_EQ(seg[0].to, 1.0);
  EXPECT_DOUBLE_EQ(seg[1].to, 2.0);
  EXPECT_EQ(poly_sign_segments({}, 0.0, 1.0).front().sign, 0);
}
