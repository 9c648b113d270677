#include "cfv/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

#include "cfv/error.hpp"
#include "cfv/polynomial.hpp"

namespace cfv {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 7-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 7> kGaussNodes{
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
    0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
constexpr std::array<double, 7> kGaussWeights{
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694,
    0.3818300505051189, 0.2797053914892767, 0.1294849661688697};

// Neumaier summation; the cell count can reach 10^5 and plain summation
// would cost more than the requested tolerance.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    abs_ += std::abs(x);
  }
  double value() const { return sum_ + comp_; }
  double abs_total() const { return abs_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_ = 0.0;
};

struct Piece {
  std::vector<double> coeffs;  // nonnegative on the piece
  int sign;                    // contribution sign
};

struct Cell {
  std::size_t piece;
  double a;
  double b;
  double lower;
  double upper;
  double estimate;
  double pad;  // rounding allowance; roughly invariant under bisection
  bool live = true;

  double width() const { return upper - lower; }
};

std::string format_tol(double tol) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", tol);
  return buf;
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string("integrand is not finite on the support (") + what + ")");
}

Cell evaluate_cell(const Integrand& f, const Piece& piece, std::size_t index, double a, double b,
                   std::size_t order) {
  const double h = b - a;
  const std::vector<double> local = poly_shift(piece.coeffs, a);

  // Sup-norm of the rounding error in the shifted coefficients on the cell.
  const double rho_err = 4.0 * static_cast<double>(piece.coeffs.size() + 1) * kEps *
                         poly_abs_bound(piece.coeffs, a, b);

  // moments[k] = int_0^h rho(a+u) u^k du
  std::vector<double> moments(order + 1, 0.0);
  std::vector<double> moment_err(order + 1, 0.0);
  for (std::size_t k = 0; k <= order; ++k) {
    double m = 0.0;
    double m_abs = 0.0;
    for (std::size_t j = 0; j < local.size(); ++j) {
      const double e = static_cast<double>(j + k + 1);
      const double term = local[j] * std::pow(h, e) / e;
      m += term;
      m_abs += std::abs(term);
    }
    moments[k] = m;
    moment_err[k] = rho_err * std::pow(h, static_cast<double>(k + 1)) / static_cast<double>(k + 1) +
                    4.0 * static_cast<double>(local.size() + 2) * kEps * m_abs;
  }

  const std::vector<double> taylor = f.taylor(a, order);
  const std::vector<Interval> encl = f.enclose(a, b, order);

  double poly = 0.0;
  double poly_abs = 0.0;
  double pad = 0.0;
  for (std::size_t k = 0; k < order; ++k) {
    poly += taylor[k] * moments[k];
    poly_abs += std::abs(taylor[k] * moments[k]);
    pad += std::abs(taylor[k]) * moment_err[k];
  }
  const double m_top = moments[order];
  const double m_lo = std::max(0.0, m_top - moment_err[order]);
  const double m_hi = std::max(0.0, m_top) + moment_err[order];
  const Interval remainder = encl[order] * Interval(m_lo, m_hi);
  pad += 16.0 * kEps * (poly_abs + remainder.mag());

  Cell cell{index, a, b, poly + remainder.lo - pad, poly + remainder.hi + pad, 0.0, pad};

  double est = 0.0;
  for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
    const double x = a + 0.5 * h * (1.0 + kGaussNodes[i]);
    est += kGaussWeights[i] * poly_eval(piece.coeffs, x) * f(x);
  }
  est *= 0.5 * h;

  require_finite(cell.lower, "bracket");
  require_finite(cell.upper, "bracket");
  require_finite(est, "estimate");
  cell.estimate = std::clamp(est, cell.lower, cell.upper);
  return cell;
}

}  // namespace

BracketedValue integrate(const Integrand& f, const CashFlow& a, double tol, const QuadratureOptions& options) {
  if (!(tol > 0.0)) throw UsageError("integration tolerance must be positive");

  BracketedValue out;
  Accumulator atoms;
  for (const auto& x : a.atoms()) {
    const double v = f(x.t);
    require_finite(v, "atom");
    atoms.add(v * x.amount);
  }
  out.atom_part = atoms.value();

  const JordanPair parts = jordan(lebesgue_decompose(a).ac);
  std::vector<Piece> pieces;
  std::vector<std::pair<double, double>> spans;
  for (const auto& p : parts.positive.density()) {
    pieces.push_back({p.coeffs, +1});
    spans.emplace_back(p.from, p.to);
  }
  for (const auto& p : parts.negative.density()) {
    pieces.push_back({p.coeffs, -1});
    spans.emplace_back(p.from, p.to);
  }

  std::vector<Cell> cells;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    double lo = spans[i].first;
    const double hi = spans[i].second;
    for (double kink : f.kinks()) {
      if (kink > lo && kink < hi) {
        cells.push_back(evaluate_cell(f, pieces[i], i, lo, kink, options.order));
        lo = kink;
      }
    }
    cells.push_back(evaluate_cell(f, pieces[i], i, lo, hi, options.order));
  }

  using Entry = std::pair<double, std::size_t>;
  auto widest_first = [](const Entry& x, const Entry& y) {
    return x.first < y.first || (x.first == y.first && x.second > y.second);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(widest_first)> queue(widest_first);
  // Running sums are compensated: the first coarse cells can be many orders
  // of magnitude wider than the tolerance.
  Accumulator running;
  Accumulator floor;
  Accumulator magnitude;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    queue.emplace(cells[i].width(), i);
    running.add(cells[i].width());
    floor.add(2.0 * cells[i].pad);
    magnitude.add(std::abs(cells[i].lower) + std::abs(cells[i].upper));
  }

  // Includes the rounding allowance of the final summation below.
  auto exact_total = [&cells] {
    Accumulator acc;
    double magnitude = 0.0;
    for (const auto& c : cells) {
      if (!c.live) continue;
      acc.add(c.width());
      magnitude += std::abs(c.lower) + std::abs(c.upper);
    }
    return acc.value() + 8.0 * kEps * magnitude;
  };

  while (!queue.empty()) {
    const double total = running.value();
    if (total <= tol && exact_total() <= tol) break;
    // Once rounding allowances dominate the width, bisection cannot help.
    const double floor_now = floor.value() + 8.0 * kEps * magnitude.value();
    if (floor_now > tol && total < 4.0 * floor_now) {
      throw DomainError("quadrature tolerance " + format_tol(tol) + " is below what double precision can certify");
    }
    if (cells.size() >= options.max_cells) {
      throw DomainError("quadrature did not reach tolerance " + format_tol(tol) + " within the cell budget");
    }
    const std::size_t id = queue.top().second;
    queue.pop();
    const Cell parent = cells[id];
    const double mid = 0.5 * (parent.a + parent.b);
    if (!(mid > parent.a && mid < parent.b)) {
      throw DomainError("quadrature tolerance is below double-precision resolution");
    }
    cells[id].live = false;
    const Piece& piece = pieces[parent.piece];
    cells.push_back(evaluate_cell(f, piece, parent.piece, parent.a, mid, options.order));
    cells.push_back(evaluate_cell(f, piece, parent.piece, mid, parent.b, options.order));
    const std::size_t n = cells.size();
    queue.emplace(cells[n - 2].width(), n - 2);
    queue.emplace(cells[n - 1].width(), n - 1);
    for (const Cell* c : {&cells[n - 2], &cells[n - 1]}) {
      running.add(c->width());
      floor.add(2.0 * c->pad);
      magnitude.add(std::abs(c->lower) + std::abs(c->upper));
    }
    running.add(-parent.width());
    floor.add(-2.0 * parent.pad);
    magnitude.add(-std::abs(parent.lower) - std::abs(parent.upper));
  }

  std::vector<const Cell*> live;
  for (const auto& c : cells) {
    if (c.live) live.push_back(&c);
  }
  std::sort(live.begin(), live.end(), [](const Cell* x, const Cell* y) {
    return std::tie(x->piece, x->a) < std::tie(y->piece, y->a);
  });

  Accumulator lower;
  Accumulator upper;
  Accumulator value;
  for (const Cell* c : live) {
    const int s = pieces[c->piece].sign;
    lower.add(s > 0 ? c->lower : -c->upper);
    upper.add(s > 0 ? c->upper : -c->lower);
    value.add(s * c->estimate);
  }
  const double sum_pad = 4.0 * kEps * (lower.abs_total() + upper.abs_total());
  out.density_part = value.value();
  out.value = out.atom_part + out.density_part;
  out.lower = std::min(out.atom_part + lower.value() - sum_pad, out.value);
  out.upper = std::max(out.atom_part + upper.value() + sum_pad, out.value);
  return out;
}

}  // namespace cfv
