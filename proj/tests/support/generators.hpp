#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cfv/arbitrage.hpp"
#include "cfv/discount_curve.hpp"

namespace gen {

enum class Family { flat, spot_grid, svensson };

inline constexpr Family kFamilies[] = {Family::flat, Family::spot_grid, Family::svensson};

inline const char* family_name(Family f) {
  switch (f) {
    case Family::flat:
      return "flat";
    case Family::spot_grid:
      return "spot_grid";
    default:
      return "svensson";
  }
}

// Random curves with horizon 100. Spot grids have decreasing discount
// factors when `monotone` is set.
inline cfv::DiscountCurve curve(std::mt19937_64& rng, Family family, bool monotone = false) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (family) {
    case Family::flat:
      return cfv::DiscountCurve::flat(monotone ? 0.001 + 0.08 * u(rng) : -0.005 + 0.085 * u(rng));
    case Family::spot_grid: {
      std::vector<cfv::Knot> knots{{0.0, 1.0}};
      double t = 0.0;
      double p = 1.0;
      const int n = 2 + static_cast<int>(u(rng) * 5);
      for (int k = 0; k < n; ++k) {
        t += 0.5 + 9.5 * u(rng);
        const double f = monotone ? 0.001 + 0.07 * u(rng) : -0.01 + 0.08 * u(rng);
        p *= std::exp(-f * (t - knots.back().t));
        knots.push_back({t, p});
      }
      return cfv::DiscountCurve::spot_grid(knots);
    }
    default:
      return cfv::DiscountCurve::svensson({0.02 + 0.04 * u(rng), -0.03 + 0.04 * u(rng), -0.02 + 0.04 * u(rng),
                                           -0.02 + 0.04 * u(rng), 0.5 + 3.0 * u(rng), 4.0 + 8.0 * u(rng)});
  }
}

// Quote sets on the grid {0, 1, ..., n-1} whose quote sides carry integer
// amounts in [-amp, amp], each grid point used with probability 1/2.
inline cfv::QuoteSet integer_quotes(std::mt19937_64& rng, int max_grid, int max_quotes, int amp) {
  std::uniform_int_distribution<int> grid_size(1, max_grid);
  std::uniform_int_distribution<int> quote_count(1, max_quotes);
  std::uniform_int_distribution<int> amount(-amp, amp);
  std::bernoulli_distribution use(0.5);
  const int n = grid_size(rng);
  std::vector<double> grid;
  for (int j = 0; j < n; ++j) grid.push_back(j);
  auto side = [&] {
    std::vector<cfv::Atom> atoms;
    for (int j = 0; j < n; ++j) {
      if (use(rng)) {
        const int a = amount(rng);
        if (a != 0) atoms.push_back({static_cast<double>(j), static_cast<double>(a)});
      }
    }
    return cfv::CashFlow(atoms, {});
  };
  std::vector<cfv::Quote> quotes;
  const int q = quote_count(rng);
  for (int i = 0; i < q; ++i) {
    cfv::CashFlow left = side();
    cfv::CashFlow right = side();
    quotes.push_back({left, right});
  }
  return {grid, quotes};
}

// Replays certificate coefficients against the quote differences.
inline bool certificate_replays(const cfv::QuoteSet& qs, const cfv::Arbitrage& a) {
  const auto d = qs.differences();
  if (a.coefficients.size() != d.size()) return false;
  const std::size_t n = qs.grid().size();
  std::vector<double> v(n, 0.0);
  double scale = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      v[j] += a.coefficients[i] * d[i][j];
      scale = std::max(scale, std::abs(a.coefficients[i] * d[i][j]));
    }
  }
  bool nonzero = false;
  for (double x : v) {
    if (x < -1e-9 * std::max(1.0, scale)) return false;
    if (x > 1e-9 * std::max(1.0, scale)) nonzero = true;
  }
  // The reported portfolio must be the same vector.
  const auto p = qs.coordinates(a.portfolio);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(p[j] - v[j]) > 1e-9 * std::max(1.0, scale)) return false;
  }
  return nonzero && a.portfolio.is_nonnegative() && !a.portfolio.is_null();
}

inline bool arbitrage_free_sound(const cfv::QuoteSet& qs, const cfv::ArbitrageFree& f) {
  if (f.implied.size() != qs.grid().size() || f.implied[0] != 1.0) return false;
  for (double p : f.implied) {
    if (!(p > 0.0)) return false;
  }
  for (const auto& row : qs.differences()) {
    double s = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * f.implied[j];
    if (std::abs(s) > 1e-9) return false;
  }
  return true;
}

}  // namespace gen
