#pragma once

#include <cstddef>
#include <vector>

namespace cfv {

enum class RowSense { le, eq, ge };

/// maximize objective . x  subject to  rows[i] . x (sense[i]) rhs[i],  x >= 0.
struct LinearProgram {
  std::vector<std::vector<double>> rows;
  std::vector<RowSense> sense;
  std::vector<double> rhs;
  std::vector<double> objective;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
};

/// Dense two-phase simplex with Bland's rule. Small problems only.
LpSolution maximize(const LinearProgram& lp, double eps = 1e-12);

}  // namespace cfv
