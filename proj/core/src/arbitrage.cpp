#include "cfv/arbitrage.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "cfv/error.hpp"
#include "cfv/pricer.hpp"
#include "cfv/simplex.hpp"

namespace cfv {

namespace {

constexpr std::size_t kMaxGrid = 256;
constexpr std::size_t kMaxQuotes = 1024;
constexpr double kMarginThreshold = 1e-10;
constexpr double kFeasibility = 1e-9;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> portfolio_vector(const std::vector<std::vector<double>>& d, const std::vector<double>& c,
                                     std::size_t n) {
  std::vector<double> v(n, 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) v[j] += c[i] * d[i][j];
  }
  return v;
}

std::vector<double> arbitrage_free_prices(const std::vector<std::vector<double>>& d, std::size_t n, double& margin) {
  // Variables p_0..p_{n-1}, s.
  LinearProgram lp;
  for (const auto& row : d) {
    std::vector<double> r(row);
    r.push_back(0.0);
    lp.rows.push_back(std::move(r));
    lp.sense.push_back(RowSense::eq);
    lp.rhs.push_back(0.0);
  }
  std::vector<double> ones(n, 1.0);
  ones.push_back(0.0);
  lp.rows.push_back(ones);
  lp.sense.push_back(RowSense::eq);
  lp.rhs.push_back(1.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> r(n + 1, 0.0);
    r[j] = 1.0;
    r[n] = -1.0;
    lp.rows.push_back(std::move(r));
    lp.sense.push_back(RowSense::ge);
    lp.rhs.push_back(0.0);
  }
  lp.objective.assign(n + 1, 0.0);
  lp.objective[n] = 1.0;

  const LpSolution sol = maximize(lp);
  if (sol.status != LpStatus::optimal) {
    margin = 0.0;
    return {};
  }
  margin = sol.x[n];
  return {sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n)};
}

// c = u - v with u, v >= 0: D^T c >= 0 and minimal sum(u + v), normalized by
// either a unit payment at t = 0 (cash today) or a unit total payment.
std::vector<double> certificate(const std::vector<std::vector<double>>& d, std::size_t n, bool cash_today) {
  const std::size_t q = d.size();
  LinearProgram lp;
  std::vector<double> total(2 * q, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> r(2 * q, 0.0);
    for (std::size_t i = 0; i < q; ++i) {
      r[i] = d[i][j];
      r[q + i] = -d[i][j];
      if (!cash_today || j == 0) {
        total[i] += d[i][j];
        total[q + i] -= d[i][j];
      }
    }
    lp.rows.push_back(std::move(r));
    lp.sense.push_back(RowSense::ge);
    lp.rhs.push_back(0.0);
  }
  lp.rows.push_back(total);
  lp.sense.push_back(RowSense::eq);
  lp.rhs.push_back(1.0);
  lp.objective.assign(2 * q, -1.0);

  const LpSolution sol = maximize(lp);
  if (sol.status != LpStatus::optimal) return {};
  std::vector<double> c(q);
  double cmax = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    c[i] = sol.x[i] - sol.x[q + i];
    cmax = std::max(cmax, std::abs(c[i]));
  }
  for (double& x : c) {
    x /= cmax;
    if (std::abs(x) <= kFeasibility) x = 0.0;
  }
  return c;
}

std::vector<double> implied_prices(const QuoteSet& qs) {
  const NaVerdict verdict = check(qs);
  if (std::holds_alternative<Arbitrage>(verdict)) throw DomainError("quote set admits an arbitrage");
  return std::get<ArbitrageFree>(verdict).implied;
}

}  // namespace

QuoteSet::QuoteSet(std::vector<double> grid, std::vector<Quote> quotes) : grid_(std::move(grid)), quotes_(std::move(quotes)) {
  if (grid_.empty() || grid_.front() != 0.0) throw UsageError("quote grid must start at t = 0");
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    if (!(grid_[i] > grid_[i - 1]) || !std::isfinite(grid_[i])) {
      throw UsageError("quote grid must be finite, sorted and distinct");
    }
  }
  for (std::size_t i = 0; i < quotes_.size(); ++i) {
    for (const CashFlow* side : {&quotes_[i].left, &quotes_[i].right}) {
      if (!side->density().empty()) {
        throw UsageError("quote " + std::to_string(i) + " has a density part; quotes must be atomic");
      }
      for (const Atom& a : side->atoms()) {
        if (!std::binary_search(grid_.begin(), grid_.end(), a.t)) {
          std::ostringstream msg;
          msg << "quote " << i << " has an atom at t = " << a.t << " off the grid";
          throw UsageError(msg.str());
        }
      }
    }
  }
}

std::vector<double> QuoteSet::coordinates(const CashFlow& flow) const {
  if (!flow.density().empty()) throw UsageError("grid coordinates require an atomic flow");
  std::vector<double> v(grid_.size(), 0.0);
  for (const Atom& a : flow.atoms()) {
    const auto it = std::lower_bound(grid_.begin(), grid_.end(), a.t);
    if (it == grid_.end() || *it != a.t) throw UsageError("atom off the quote grid");
    v[static_cast<std::size_t>(it - grid_.begin())] += a.amount;
  }
  return v;
}

std::vector<std::vector<double>> QuoteSet::differences() const {
  std::vector<std::vector<double>> d;
  d.reserve(quotes_.size());
  for (const Quote& q : quotes_) {
    std::vector<double> row = coordinates(q.left);
    const std::vector<double> r = coordinates(q.right);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] -= r[j];
    d.push_back(std::move(row));
  }
  return d;
}

CashFlow QuoteSet::flow(const std::vector<double>& coordinates) const {
  if (coordinates.size() != grid_.size()) throw UsageError("coordinate vector does not match the grid");
  std::vector<Atom> atoms;
  for (std::size_t j = 0; j < grid_.size(); ++j) {
    if (coordinates[j] != 0.0) atoms.push_back({grid_[j], coordinates[j]});
  }
  return CashFlow(std::move(atoms), {});
}

NaVerdict check(const QuoteSet& qs) {
  const std::size_t n = qs.grid().size();
  if (n > kMaxGrid) throw UsageError("quote grid exceeds 256 points");
  if (qs.quotes().size() > kMaxQuotes) throw UsageError("quote set exceeds 1024 quotes");

  const auto d = qs.differences();
  if (d.empty()) return ArbitrageFree{std::vector<double>(n, 1.0), 1.0 / static_cast<double>(n)};

  double margin = 0.0;
  std::vector<double> p = arbitrage_free_prices(d, n, margin);
  if (margin > kMarginThreshold) {
    const double p0 = p[0];
    for (double& x : p) x /= p0;
    double residual = 0.0;
    double scale = 0.0;
    for (const auto& row : d) {
      residual = std::max(residual, std::abs(dot(row, p)));
      for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(row[j] * p[j]));
    }
    if (residual <= kFeasibility * std::max(1.0, scale)) return ArbitrageFree{std::move(p), margin};
  }

  // Prefer a portfolio that pays at t = 0: the law-of-one-price form.
  std::vector<double> c = certificate(d, n, true);
  if (c.empty()) c = certificate(d, n, false);
  if (c.empty()) throw DomainError("no arbitrage certificate found: quote set is numerically degenerate");
  std::vector<double> v = portfolio_vector(d, c, n);
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  for (double& x : v) {
    if (std::abs(x) <= kFeasibility * vmax) x = 0.0;
    if (x < 0.0) throw DomainError("arbitrage certificate failed to replay");
  }
  return Arbitrage{std::move(c), qs.flow(v)};
}

DiscountCurve implied_curve(const QuoteSet& qs) {
  const std::vector<double> prices = implied_prices(qs);
  const std::size_t n = qs.grid().size();
  const auto d = qs.differences();

  std::vector<Knot> knots;
  if (n > 1) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(std::max<std::size_t>(d.size(), 1)),
                                              static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d[i][j];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-10);
    const Eigen::Index rank = lu.rank();
    if (rank != static_cast<Eigen::Index>(n) - 1) {
      const Eigen::MatrixXd kernel = lu.kernel();
      std::ostringstream msg;
      // The kernel always contains the price vector itself; the rest is freedom.
      msg << "implied prices are not unique: " << (kernel.cols() - 1) << " free direction(s) in the kernel basis";
      for (Eigen::Index k = 0; k < kernel.cols(); ++k) {
        msg << (k == 0 ? ": " : "; ") << "(";
        for (Eigen::Index j = 0; j < kernel.rows(); ++j) msg << (j ? ", " : "") << kernel(j, k);
        msg << ")";
      }
      throw DomainError(msg.str());
    }
  }
  knots.push_back({0.0, 1.0});
  for (std::size_t j = 1; j < n; ++j) knots.push_back({qs.grid()[j], prices[j]});
  if (knots.size() < 2) throw DomainError("a single-point grid does not determine a curve");
  return DiscountCurve::spot_grid(std::move(knots), std::max(kDefaultHorizon, qs.grid().back()));
}

ClosureReport closure_probe(const QuoteSet& qs, std::size_t trials, std::uint64_t seed) {
  ClosureReport report;
  report.trials = trials;
  std::vector<double> p;
  try {
    implied_curve(qs);
    p = implied_prices(qs);
  } catch (const DomainError& e) {
    report.failed = trials;
    report.failures.emplace_back(e.what());
    return report;
  }

  const auto& quotes = qs.quotes();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> real(-10.0, 10.0);
  auto value = [&](const CashFlow& f) { return dot(qs.coordinates(f), p); };
  auto close = [](double a, double b, double scale) { return std::abs(a - b) <= 1e-9 * std::max(1.0, scale); };

  for (std::size_t t = 0; t < trials; ++t) {
    bool ok = true;
    std::string what;
    if (value(CashFlow{}) != 0.0) {
      ok = false;
      what = "null flow has nonzero price";
    }
    if (!quotes.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, quotes.size() - 1);
      const Quote& a = quotes[pick(rng)];
      const Quote& b = quotes[pick(rng)];
      const double r = real(rng);
      const double la = value(-a.left), ra = value(-a.right);
      if (!close(la, ra, std::abs(la))) {
        ok = false;
        what = "sign inversion";
      }
      const double ls = value(a.left + b.left), rs = value(a.right + b.right);
      if (!close(ls, rs, std::abs(ls))) {
        ok = false;
        what = "additivity";
      }
      const double lr = value(r * a.left), rr = value(r * a.right);
      if (!close(lr, rr, std::abs(lr))) {
        ok = false;
        what = "scalar closure";
      }
    }
    if (ok) {
      ++report.passed;
    } else {
      ++report.failed;
      report.failures.push_back("trial " + std::to_string(t) + ": " + what);
    }
  }
  return report;
}

QuoteSet quotes_from_curve(const DiscountCurve& curve, std::vector<double> grid, const std::vector<CashFlow>& flows) {
  std::vector<Quote> quotes;
  quotes.reserve(flows.size());
  for (const CashFlow& f : flows) {
    const double v = price(curve, f, default_tolerance(f)).value;
    quotes.push_back({f, CashFlow::dirac(0.0, v)});
  }
  return {std::move(grid), std::move(quotes)};
}

}  // namespace cfv
