#pragma once

#include <cstddef>

#include "cfv/cashflow.hpp"
#include "cfv/integrand.hpp"

namespace cfv {

/// A value with a certified enclosure. Atoms contribute exactly; the density
/// contribution carries the bracket.
struct BracketedValue {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double atom_part = 0.0;
  double density_part = 0.0;

  double width() const { return upper - lower; }
  bool contains(double x) const { return lower <= x && x <= upper; }
};

struct QuadratureOptions {
  /// Degree of the Taylor model per cell. The integrand is written as its
  /// Taylor polynomial of degree order-1 at the cell start plus a Lagrange
  /// remainder whose coefficient is enclosed over the whole cell. Order 0 is
  /// the plain Darboux sandwich [min f, max f] * mass.
  std::size_t order = 7;
  /// Upper bound on cells before giving up with DomainError.
  std::size_t max_cells = std::size_t{1} << 20;
};

/// Integral of f against the measure `a`, with upper - lower <= tol.
///
/// Atom part: sum of f(t_k) * amount_k. Density part: the Jordan split gives
/// nonnegative pieces, each cell of which is bracketed by the Taylor model and
/// estimated with 7-point Gauss-Legendre (clamped into the bracket). Cells are
/// bisected widest-first until the total bracket width is within tol; the
/// final sums run in a fixed order so results are reproducible.
///
/// Throws UsageError for tol <= 0, DomainError when f is non-finite on the
/// support or tol is below what double precision can certify.
BracketedValue integrate(const Integrand& f, const CashFlow& a, double tol,
                         const QuadratureOptions& options = {});

}  // namespace cfv
