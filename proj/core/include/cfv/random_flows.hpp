#pragma once

#include <cstdint>
#include <random>

#include "cfv/cashflow.hpp"

namespace cfv {

/// Seeded generator of small random cash flows for property trials.
///
/// Atom times and piece endpoints are multiples of 1/8 and amounts are
/// multiples of 1/64, so sums and differences of generated flows are exact in
/// double precision.
class FlowSampler {
 public:
  explicit FlowSampler(std::uint64_t seed, double horizon = 30.0) : rng_(seed), horizon_(horizon) {}

  double uniform(double lo, double hi);
  int integer(int lo, int hi);

  /// Nonnegative and not null: atoms only, density only, or both.
  CashFlow nonnegative();
  CashFlow nonnegative_atoms();
  CashFlow nonnegative_density();
  /// Arbitrary signs; may contain sign-changing density pieces.
  CashFlow signed_flow();

  std::mt19937_64& engine() { return rng_; }

 private:
  double grid_time();
  double dyadic_amount(double lo, double hi);

  std::mt19937_64 rng_;
  double horizon_;
};

}  // namespace cfv
