#include "cfv/simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "cfv/error.hpp"

namespace cfv {

namespace {

constexpr std::size_t kRefactorEvery = 32;

struct Tableau {
  // m constraint rows followed by the objective row; last column is the rhs.
  std::vector<std::vector<double>> a;
  std::vector<std::size_t> basis;
  std::size_t m = 0;
  std::size_t n = 0;  // columns excluding rhs
  std::size_t pivots = 0;
  double eps = 1e-12;
  // Initial constraint rows, the original index of each live row, and the
  // cost vector (minimized) of the current phase.
  std::vector<std::vector<double>> a0;
  std::vector<std::size_t> row_id;
  std::vector<double> cost;

  // Rebuilds the tableau as B^-1 [A | b] from the initial rows, discarding
  // the rounding accumulated by successive pivots.
  void refactor() {
    Eigen::MatrixXd b(m, m);
    Eigen::MatrixXd full(m, n + 1);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& row = a0[row_id[i]];
      for (std::size_t k = 0; k < m; ++k) b(i, k) = row[basis[k]];
      for (std::size_t j = 0; j <= n; ++j) full(i, j) = row[j];
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    const Eigen::MatrixXd t = lu.solve(full);
    if (!t.allFinite()) return;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j <= n; ++j) a[i][j] = t(i, j);
      for (std::size_t k = 0; k < m; ++k) a[i][basis[k]] = i == k ? 1.0 : 0.0;
      if (a[i][n] < 0.0 && a[i][n] > -1e3 * eps) a[i][n] = 0.0;
    }
    reprice();
  }

  // Objective row: reduced costs c - c_B B^-1 A and minus the current value.
  void reprice() {
    std::vector<double>& obj = a[m];
    std::fill(obj.begin(), obj.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) obj[j] = cost[j];
    for (std::size_t i = 0; i < m; ++i) {
      const double f = cost[basis[i]];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n; ++j) obj[j] -= f * a[i][j];
    }
  }

  double& rhs(std::size_t i) { return a[i][n]; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = a[r][c];
    for (double& v : a[r]) v /= p;
    a[r][c] = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r) continue;
      const double f = a[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n; ++j) a[i][j] -= f * a[r][j];
      a[i][c] = 0.0;
    }
    basis[r] = c;
    ++pivots;
  }

  // Objective row holds reduced costs of a minimization: entering column has
  // a negative entry. Returns false when unbounded.
  bool run(const std::vector<bool>& allowed) {
    const std::size_t obj = m;
    bool fresh = false;
    for (;;) {
      std::size_t enter = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (allowed[j] && a[obj][j] < -eps) {
          enter = j;
          break;
        }
      }
      if (enter == n) {
        // Confirm optimality on a freshly factored tableau.
        if (fresh) return true;
        refactor();
        fresh = true;
        continue;
      }
      fresh = false;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        if (a[i][enter] > eps) best = std::min(best, rhs(i) / a[i][enter]);
      }
      std::size_t leave = m;
      for (std::size_t i = 0; i < m; ++i) {
        if (a[i][enter] > eps && rhs(i) / a[i][enter] <= best + eps && (leave == m || basis[i] < basis[leave])) {
          leave = i;
        }
      }
      if (leave == m) return false;
      pivot(leave, enter);
      if (pivots % kRefactorEvery == 0) refactor();
    }
  }
};

}  // namespace

LpSolution maximize(const LinearProgram& lp, double eps) {
  const std::size_t m = lp.rows.size();
  const std::size_t nv = lp.objective.size();
  if (lp.sense.size() != m || lp.rhs.size() != m) throw UsageError("linear program: row, sense and rhs sizes differ");
  for (const auto& row : lp.rows) {
    if (row.size() != nv) throw UsageError("linear program: row width differs from objective size");
  }

  // Normalize to rhs >= 0 and scale rows to unit max norm.
  std::vector<std::vector<double>> rows = lp.rows;
  std::vector<RowSense> sense = lp.sense;
  std::vector<double> rhs = lp.rhs;
  for (std::size_t i = 0; i < m; ++i) {
    double scale = std::abs(rhs[i]);
    for (double v : rows[i]) scale = std::max(scale, std::abs(v));
    if (scale > 0.0) {
      for (double& v : rows[i]) v /= scale;
      rhs[i] /= scale;
    }
    if (rhs[i] < 0.0) {
      for (double& v : rows[i]) v = -v;
      rhs[i] = -rhs[i];
      if (sense[i] == RowSense::le) {
        sense[i] = RowSense::ge;
      } else if (sense[i] == RowSense::ge) {
        sense[i] = RowSense::le;
      }
    }
  }

  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (RowSense s : sense) {
    if (s != RowSense::eq) ++n_slack;
    if (s != RowSense::le) ++n_art;
  }
  const std::size_t n = nv + n_slack + n_art;
  const std::size_t art0 = nv + n_slack;

  Tableau t;
  t.m = m;
  t.n = n;
  t.eps = eps;
  t.a.assign(m + 1, std::vector<double>(n + 1, 0.0));
  t.basis.assign(m, 0);

  std::size_t slack = nv;
  std::size_t art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    std::copy(rows[i].begin(), rows[i].end(), t.a[i].begin());
    t.a[i][n] = rhs[i];
    if (sense[i] == RowSense::le) {
      t.a[i][slack] = 1.0;
      t.basis[i] = slack++;
    } else {
      if (sense[i] == RowSense::ge) t.a[i][slack++] = -1.0;
      t.a[i][art] = 1.0;
      t.basis[i] = art++;
    }
  }

  t.a0.assign(t.a.begin(), t.a.begin() + static_cast<std::ptrdiff_t>(m));
  for (std::size_t i = 0; i < m; ++i) t.row_id.push_back(i);

  LpSolution sol;

  // Phase 1: minimize the sum of artificials.
  if (n_art > 0) {
    t.cost.assign(n, 0.0);
    for (std::size_t j = art0; j < n; ++j) t.cost[j] = 1.0;
    t.reprice();
    t.run(std::vector<bool>(n, true));
    if (-t.a[m][n] > 1e3 * eps) {
      sol.pivots = t.pivots;
      return sol;
    }
    // Drive remaining artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.m;) {
      if (t.basis[i] < art0) {
        ++i;
        continue;
      }
      std::size_t c = art0;
      for (std::size_t j = 0; j < art0; ++j) {
        if (std::abs(t.a[i][j]) > eps) {
          c = j;
          break;
        }
      }
      if (c < art0) {
        t.pivot(i, c);
        ++i;
      } else {
        t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        t.row_id.erase(t.row_id.begin() + static_cast<std::ptrdiff_t>(i));
        --t.m;
      }
    }
  }

  // Phase 2: minimize -objective over the non-artificial columns.
  t.cost.assign(n, 0.0);
  for (std::size_t j = 0; j < nv; ++j) t.cost[j] = -lp.objective[j];
  t.reprice();
  std::vector<bool> allowed(n, true);
  for (std::size_t j = art0; j < n; ++j) allowed[j] = false;
  const bool bounded = t.run(allowed);
  sol.pivots = t.pivots;
  if (!bounded) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  sol.status = LpStatus::optimal;
  sol.x.assign(nv, 0.0);
  for (std::size_t i = 0; i < t.m; ++i) {
    if (t.basis[i] < nv) sol.x[t.basis[i]] = std::max(0.0, t.a[i][n]);
  }
  double value = 0.0;
  for (std::size_t j = 0; j < nv; ++j) value += lp.objective[j] * sol.x[j];
  sol.objective = value;
  return sol;
}

}  // namespace cfv
