#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cfv/cashflow.hpp"
#include "cfv/discount_curve.hpp"

namespace cfv {

/// left ~ right: the two atomic flows can be traded for each other.
struct Quote {
  CashFlow left;
  CashFlow right;
};

/// Quotes over a finite grid of times. The grid is sorted, distinct and
/// contains 0; every atom of every quote sits on the grid.
class QuoteSet {
 public:
  QuoteSet(std::vector<double> grid, std::vector<Quote> quotes);

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<Quote>& quotes() const { return quotes_; }

  /// Grid coordinates of a flow whose atoms lie on the grid.
  std::vector<double> coordinates(const CashFlow& flow) const;

  /// Row i is left_i - right_i in grid coordinates. A price vector p respects
  /// every quote iff D p = 0.
  std::vector<std::vector<double>> differences() const;

  /// Atomic flow with the given grid coordinates.
  CashFlow flow(const std::vector<double>& coordinates) const;

 private:
  std::vector<double> grid_;
  std::vector<Quote> quotes_;
};

struct ArbitrageFree {
  /// Strictly positive prices on the grid with implied[0] = 1.
  std::vector<double> implied;
  /// Largest achievable min(p) over price vectors summing to 1.
  double margin;
};

struct Arbitrage {
  /// Weights per quote; max |c_i| = 1.
  std::vector<double> coefficients;
  /// sum c_i (left_i - right_i): nonnegative, nonzero, exchangeable for nothing.
  CashFlow portfolio;
};

using NaVerdict = std::variant<ArbitrageFree, Arbitrage>;

/// Decides no-arbitrage for the quote set. Throws UsageError beyond desk scale
/// (256 grid points, 1024 quotes).
NaVerdict check(const QuoteSet& qs);

/// Spot-grid curve through the unique implied prices. DomainError when an
/// arbitrage exists or the prices are not pinned down by the quotes.
DiscountCurve implied_curve(const QuoteSet& qs);

struct ClosureReport {
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;

  bool ok() const { return failed == 0 && passed == trials; }
};

/// Random checks that the implied prices treat sign-inverted, added and scaled
/// quotes as exchangeable too.
ClosureReport closure_probe(const QuoteSet& qs, std::size_t trials, std::uint64_t seed);

/// One quote per flow: flow ~ price(curve, flow) * delta_0.
QuoteSet quotes_from_curve(const DiscountCurve& curve, std::vector<double> grid, const std::vector<CashFlow>& flows);

}  // namespace cfv
