#include <gtest/gtest.h>

#include "property_suites.hpp"

namespace {

void expect_clean(const suites::Outcome& o) {
  EXPECT_GE(o.cases, 200u) << o.name;
  EXPECT_EQ(o.failures, 0u) << o.name << ": " << o.first_failure;
}

}  // namespace

TEST(Properties, Linearity) { expect_clean(suites::linearity(1, 200)); }
TEST(Properties, StrictPositivity) { expect_clean(suites::strict_positivity(2, 200)); }
TEST(Properties, Monotonicity) { expect_clean(suites::monotonicity(3, 200)); }
TEST(Properties, SelfFinancing) { expect_clean(suites::self_financing(4, 200)); }
TEST(Properties, SigmaAdditivity) { expect_clean(suites::sigma_additivity(5, 200)); }
TEST(Properties, DarbouxRefinement) { expect_clean(suites::darboux_refinement(6, 200)); }
TEST(Properties, Decomposition) { expect_clean(suites::decomposition(7, 200)); }
