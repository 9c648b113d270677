#include "cfv/cashflow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cfv/error.hpp"
#include "cfv/polynomial.hpp"

namespace cfv {
namespace detail {

struct CanonicalAccess {
  static CashFlow make(std::vector<Atom> atoms, std::vector<DensityPiece> density) {
    CashFlow c;
    c.atoms_ = std::move(atoms);
    c.density_ = std::move(density);
    return c;
  }
};

}  // namespace detail

namespace {

void validate_atom(const Atom& a) {
  if (!std::isfinite(a.t) || a.t < 0.0) {
    throw UsageError("atom time must be finite and nonnegative, got " + std::to_string(a.t));
  }
  if (!std::isfinite(a.amount)) throw UsageError("atom amount must be finite");
}

void validate_piece(const DensityPiece& p) {
  if (!std::isfinite(p.from) || !std::isfinite(p.to) || p.from < 0.0) {
    throw UsageError("density piece bounds must be finite and nonnegative");
  }
  if (!(p.from < p.to)) throw UsageError("density piece requires from < to");
  for (double c : p.coeffs) {
    if (!std::isfinite(c)) throw UsageError("density coefficients must be finite");
  }
  if (poly_trim(p.coeffs).size() > kMaxDegree + 1) {
    throw UsageError("density polynomial degree exceeds " + std::to_string(kMaxDegree));
  }
}

std::vector<Atom> normalize_atoms(std::vector<Atom> atoms) {
  for (const auto& a : atoms) validate_atom(a);
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.t < y.t; });
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!out.empty() && out.back().t == a.t) {
      out.back().amount += a.amount;
    } else {
      out.push_back(a);
    }
  }
  std::erase_if(out, [](const Atom& a) { return a.amount == 0.0; });
  return out;
}

bool sorted_disjoint(const std::vector<DensityPiece>& pieces) {
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    if (pieces[i - 1].to > pieces[i].from) return false;
  }
  return true;
}

// Sums all pieces over the elementary intervals cut by every endpoint.
std::vector<DensityPiece> overlay(const std::vector<DensityPiece>& pieces) {
  std::vector<double> cuts;
  for (const auto& p : pieces) {
    cuts.push_back(p.from);
    cuts.push_back(p.to);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<DensityPiece> out;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    std::vector<double> sum;
    bool covered = false;
    for (const auto& p : pieces) {
      if (p.from <= lo && hi <= p.to) {
        covered = true;
        if (sum.size() < p.coeffs.size()) sum.resize(p.coeffs.size(), 0.0);
        for (std::size_t j = 0; j < p.coeffs.size(); ++j) sum[j] += p.coeffs[j];
      }
    }
    if (covered) out.push_back({lo, hi, std::move(sum)});
  }
  return out;
}

std::vector<DensityPiece> normalize_density(std::vector<DensityPiece> pieces) {
  for (const auto& p : pieces) validate_piece(p);
  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const DensityPiece& x, const DensityPiece& y) { return x.from < y.from; });
  if (!sorted_disjoint(pieces)) pieces = overlay(pieces);

  std::vector<DensityPiece> out;
  out.reserve(pieces.size());
  for (auto& p : pieces) {
    p.coeffs = poly_trim(std::move(p.coeffs));
    if (p.coeffs.empty()) continue;
    if (!out.empty() && out.back().to == p.from && out.back().coeffs == p.coeffs) {
      out.back().to = p.to;
    } else {
      out.push_back(std::move(p));
    }
  }
  return out;
}

bool in_interval(double t, double from, double to, Ends ends) {
  const bool lower_closed = ends == Ends::closed || ends == Ends::closed_open;
  const bool upper_closed = ends == Ends::closed || ends == Ends::open_closed;
  const bool above = lower_closed ? t >= from : t > from;
  const bool below = std::isinf(to) || (upper_closed ? t <= to : t < to);
  return above && below;
}

void validate_interval(double from, double to) {
  if (std::isnan(from) || std::isnan(to) || !std::isfinite(from) || from < 0.0 || from > to) {
    throw UsageError("invalid interval: require 0 <= from <= to");
  }
}

}  // namespace

CashFlow::CashFlow(std::vector<Atom> atoms, std::vector<DensityPiece> density)
    : atoms_(normalize_atoms(std::move(atoms))), density_(normalize_density(std::move(density))) {}

CashFlow CashFlow::dirac(double t, double amount) { return CashFlow({{t, amount}}, {}); }

CashFlow CashFlow::density(double from, double to, std::vector<double> coeffs) {
  return CashFlow({}, {{from, to, std::move(coeffs)}});
}

CashFlow CashFlow::uniform(double from, double to, double rate) { return density(from, to, {rate}); }

double CashFlow::support_min() const {
  if (is_null()) return 0.0;
  double lo = kInfinity;
  if (!atoms_.empty()) lo = atoms_.front().t;
  if (!density_.empty()) lo = std::min(lo, density_.front().from);
  return lo;
}

double CashFlow::support_max() const {
  if (is_null()) return 0.0;
  double hi = 0.0;
  if (!atoms_.empty()) hi = atoms_.back().t;
  if (!density_.empty()) hi = std::max(hi, density_.back().to);
  return hi;
}

double CashFlow::total_variation() const {
  double tv = 0.0;
  for (const auto& a : atoms_) tv += std::abs(a.amount);
  for (const auto& p : density_) {
    for (const auto& seg : poly_sign_segments(p.coeffs, p.from, p.to)) {
      tv += std::abs(poly_integral(p.coeffs, seg.from, seg.to));
    }
  }
  return tv;
}

double CashFlow::total_mass() const { return mass(*this, 0.0, kInfinity, Ends::closed); }

bool CashFlow::is_nonnegative() const {
  for (const auto& a : atoms_) {
    if (a.amount < 0.0) return false;
  }
  for (const auto& p : density_) {
    for (const auto& seg : poly_sign_segments(p.coeffs, p.from, p.to)) {
      if (seg.sign < 0) return false;
    }
  }
  return true;
}

CashFlow add(const CashFlow& a, const CashFlow& b) {
  if (b.is_null()) return a;
  if (a.is_null()) return b;
  std::vector<Atom> atoms = a.atoms();
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  std::vector<DensityPiece> density = a.density();
  density.insert(density.end(), b.density().begin(), b.density().end());
  return CashFlow(std::move(atoms), std::move(density));
}

CashFlow scale(const CashFlow& a, double c) {
  if (!std::isfinite(c)) throw UsageError("scale factor must be finite");
  if (c == 0.0 || a.is_null()) return CashFlow();
  std::vector<Atom> atoms = a.atoms();
  for (auto& x : atoms) x.amount *= c;
  std::vector<DensityPiece> density = a.density();
  for (auto& p : density) {
    for (auto& k : p.coeffs) k *= c;
  }
  return CashFlow(std::move(atoms), std::move(density));
}

JordanPair jordan(const CashFlow& a) {
  std::vector<Atom> pos_atoms;
  std::vector<Atom> neg_atoms;
  for (const auto& x : a.atoms()) {
    if (x.amount > 0.0) {
      pos_atoms.push_back(x);
    } else {
      neg_atoms.push_back({x.t, -x.amount});
    }
  }
  std::vector<DensityPiece> pos;
  std::vector<DensityPiece> neg;
  for (const auto& p : a.density()) {
    for (const auto& seg : poly_sign_segments(p.coeffs, p.from, p.to)) {
      if (seg.sign > 0) {
        pos.push_back({seg.from, seg.to, p.coeffs});
      } else if (seg.sign < 0) {
        std::vector<double> flipped = p.coeffs;
        for (auto& k : flipped) k = -k;
        neg.push_back({seg.from, seg.to, std::move(flipped)});
      }
    }
  }
  return {CashFlow(std::move(pos_atoms), std::move(pos)), CashFlow(std::move(neg_atoms), std::move(neg))};
}

LebesguePair lebesgue_decompose(const CashFlow& a) {
  return {detail::CanonicalAccess::make({}, a.density()), detail::CanonicalAccess::make(a.atoms(), {})};
}

CashFlow trace(const CashFlow& a, double from, double to, Ends ends) {
  validate_interval(from, to);
  std::vector<Atom> atoms;
  for (const auto& x : a.atoms()) {
    if (in_interval(x.t, from, to, ends)) atoms.push_back(x);
  }
  std::vector<DensityPiece> density;
  for (const auto& p : a.density()) {
    const double lo = std::max(from, p.from);
    const double hi = std::min(to, p.to);
    if (lo < hi) density.push_back({lo, hi, p.coeffs});
  }
  return detail::CanonicalAccess::make(std::move(atoms), std::move(density));
}

double mass(const CashFlow& a, double from, double to, Ends ends) {
  validate_interval(from, to);
  double m = 0.0;
  for (const auto& x : a.atoms()) {
    if (in_interval(x.t, from, to, ends)) m += x.amount;
  }
  for (const auto& p : a.density()) {
    const double lo = std::max(from, p.from);
    const double hi = std::min(to, p.to);
    if (lo < hi) m += poly_integral(p.coeffs, lo, hi);
  }
  return m;
}

}  // namespace cfv
