#include "cfv/random_flows.hpp"

#include <algorithm>
#include <cmath>

namespace cfv {

double FlowSampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

int FlowSampler::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

double FlowSampler::grid_time() {
  const int steps = static_cast<int>(std::floor(horizon_ * 8.0));
  return integer(0, steps) / 8.0;
}

double FlowSampler::dyadic_amount(double lo, double hi) {
  return std::round(uniform(lo, hi) * 64.0) / 64.0;
}

CashFlow FlowSampler::nonnegative_atoms() {
  std::vector<Atom> atoms;
  const int n = integer(1, 6);
  for (int i = 0; i < n; ++i) atoms.push_back({grid_time(), std::max(1.0 / 64.0, dyadic_amount(0.0, 100.0))});
  return CashFlow(std::move(atoms), {});
}

CashFlow FlowSampler::nonnegative_density() {
  std::vector<DensityPiece> pieces;
  const int n = integer(1, 3);
  for (int i = 0; i < n; ++i) {
    double a = grid_time();
    double b = grid_time();
    if (a == b) b = std::min(horizon_, a + 0.5);
    if (a == b) a = b - 0.5;
    if (a > b) std::swap(a, b);
    // c0 + c1 (t - a) + c2 (t - m)^2 with c0 > 0 and c1, c2 >= 0, expanded in t.
    const double c0 = std::max(1.0 / 64.0, dyadic_amount(0.0, 20.0));
    const double c1 = integer(0, 1) ? dyadic_amount(0.0, 2.0) : 0.0;
    const double c2 = integer(0, 1) ? dyadic_amount(0.0, 0.5) : 0.0;
    const double m = std::round((a + b) * 4.0) / 8.0;
    pieces.push_back({a, b, {c0 - c1 * a + c2 * m * m, c1 - 2.0 * c2 * m, c2}});
  }
  return CashFlow({}, std::move(pieces));
}

CashFlow FlowSampler::nonnegative() {
  switch (integer(0, 2)) {
    case 0:
      return nonnegative_atoms();
    case 1:
      return nonnegative_density();
    default:
      return nonnegative_atoms() + nonnegative_density();
  }
}

CashFlow FlowSampler::signed_flow() {
  std::vector<Atom> atoms;
  const int n_atoms = integer(0, 5);
  for (int i = 0; i < n_atoms; ++i) atoms.push_back({grid_time(), dyadic_amount(-100.0, 100.0)});
  std::vector<DensityPiece> pieces;
  const int n_pieces = integer(n_atoms == 0 ? 1 : 0, 3);
  for (int i = 0; i < n_pieces; ++i) {
    double a = grid_time();
    double b = grid_time();
    if (a == b) b = std::min(horizon_, a + 0.5);
    if (a == b) a = b - 0.5;
    if (a > b) std::swap(a, b);
    const double root = std::round(uniform(a, b) * 8.0) / 8.0;
    const double slope = dyadic_amount(-4.0, 4.0);
    const double level = dyadic_amount(-10.0, 10.0);
    // Either a level or a line crossing zero inside the piece.
    if (integer(0, 1)) {
      pieces.push_back({a, b, {level}});
    } else {
      pieces.push_back({a, b, {-slope * root, slope}});
    }
  }
  return CashFlow(std::move(atoms), std::move(pieces));
}

}  // namespace cfv
