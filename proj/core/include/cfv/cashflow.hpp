#pragma once

#include <limits>
#include <vector>

namespace cfv {

namespace detail {
struct CanonicalAccess;
}

/// A payment of `amount` currency units at time `t` (years). Never zero.
struct Atom {
  double t;
  double amount;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Payment density on [from, to), polynomial in t with constant term first.
struct DensityPiece {
  double from;
  double to;
  std::vector<double> coeffs;

  friend bool operator==(const DensityPiece&, const DensityPiece&) = default;
};

/// Finite signed Borel measure on [0, inf): finitely many atoms plus a
/// piecewise-polynomial density.
///
/// Always held in canonical form: atoms strictly increasing in t with nonzero
/// amounts; density pieces sorted, non-overlapping, trimmed of trailing zero
/// coefficients, never identically zero, and adjacent pieces with identical
/// coefficients merged. Structural equality is therefore equality of measures
/// for any two values built from the same exact inputs. Atom times compare
/// bitwise; no snapping is performed.
class CashFlow {
 public:
  /// The null measure.
  CashFlow() = default;

  /// Validates and normalizes. Overlapping density pieces are summed and
  /// duplicate atom times merged. Throws UsageError on negative or non-finite
  /// times, from >= to, non-finite amounts or degree > 8.
  CashFlow(std::vector<Atom> atoms, std::vector<DensityPiece> density);

  static CashFlow dirac(double t, double amount = 1.0);
  static CashFlow density(double from, double to, std::vector<double> coeffs);
  /// Constant rate on [from, to): the trace Lebesgue measure when rate = 1.
  static CashFlow uniform(double from, double to, double rate = 1.0);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityPiece>& density() const { return density_; }

  bool is_null() const { return atoms_.empty() && density_.empty(); }
  bool is_atomic() const { return density_.empty(); }
  bool is_absolutely_continuous() const { return atoms_.empty(); }

  /// Smallest / largest point of the support. 0 for the null measure.
  double support_min() const;
  double support_max() const;

  /// |gamma|(R+) = gamma+(R+) + gamma-(R+).
  double total_variation() const;
  /// gamma(R+).
  double total_mass() const;
  /// True when the negative Jordan part is null.
  bool is_nonnegative() const;

  friend bool operator==(const CashFlow&, const CashFlow&) = default;

 private:
  // Bypasses normalization for inputs already known to be canonical.
  friend struct detail::CanonicalAccess;

  std::vector<Atom> atoms_;
  std::vector<DensityPiece> density_;
};

/// Endpoint convention for traces and masses.
enum class Ends {
  closed,       // [from, to]
  open_closed,  // (from, to]
  closed_open,  // [from, to)
  open,         // (from, to)
};

/// Hahn-Jordan decomposition: gamma = positive - negative, mutually singular.
struct JordanPair {
  CashFlow positive;
  CashFlow negative;
};

/// Lebesgue decomposition: absolutely continuous part (density only) plus the
/// singular part (atoms only).
struct LebesguePair {
  CashFlow ac;
  CashFlow singular;
};

CashFlow add(const CashFlow& a, const CashFlow& b);
CashFlow scale(const CashFlow& a, double c);

inline CashFlow operator+(const CashFlow& a, const CashFlow& b) { return add(a, b); }
inline CashFlow operator*(double c, const CashFlow& a) { return scale(a, c); }
inline CashFlow operator-(const CashFlow& a) { return scale(a, -1.0); }
inline CashFlow operator-(const CashFlow& a, const CashFlow& b) { return add(a, -b); }

/// Density pieces are split at sign changes of their polynomial; touching
/// zeros do not split.
JordanPair jordan(const CashFlow& a);

LebesguePair lebesgue_decompose(const CashFlow& a);

/// Restriction to the interval. Atoms follow the endpoint convention; density
/// endpoints carry no mass so pieces are simply clipped. `to` may be +inf.
/// Throws UsageError unless 0 <= from <= to.
CashFlow trace(const CashFlow& a, double from, double to, Ends ends);

/// gamma(I) for the interval I = (from, to) under the endpoint convention.
double mass(const CashFlow& a, double from, double to, Ends ends);

/// F(t) = gamma([0, t]).
inline double distribution(const CashFlow& a, double t) { return mass(a, 0.0, t, Ends::closed); }

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace cfv
