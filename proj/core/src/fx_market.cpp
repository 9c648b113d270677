#include "cfv/fx_market.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "cfv/error.hpp"
#include "cfv/polynomial.hpp"
#include "cfv/taylor.hpp"

namespace cfv {

namespace {

constexpr std::size_t kFitDegree = kMaxDegree;
constexpr std::size_t kNodes = kFitDegree + 1;
constexpr std::size_t kMaxSubpieces = 1024;
constexpr double kFitRelTol = 1e-10;
// Lebesgue constants of up to 9 Chebyshev nodes stay below 2.2.
constexpr double kLebesgue = 2.5;

template <class N>
N fx_generic(const DualCurrencyMarket& m, const N& t) {
  using std::exp;
  return exp(m.foreign_curve().log_discount_generic(t) - m.domestic_curve().log_discount_generic(t)) * m.spot_fx();
}

Interval fx_enclosure(const DualCurrencyMarket& m, const std::vector<double>& rho, Interval t, std::size_t coefficient) {
  const auto x = Series<Interval>::variable(t, coefficient);
  const auto h = poly_eval_generic(std::span<const double>(rho), x) * fx_generic(m, x);
  return h[coefficient];
}

struct Fit {
  std::vector<double> coeffs;
  double error = std::numeric_limits<double>::infinity();  // certified sup-norm bound on the piece
  double scale = 0.0;                                       // max |h| over the nodes
};

// Interpolates h = rho * fx at the n + 1 Chebyshev nodes of [a, b].
Fit fit_piece(const DualCurrencyMarket& m, const std::vector<double>& rho, double a, double b, std::size_t n) {
  const std::size_t nodes = n + 1;
  const long double mid = 0.5L * (static_cast<long double>(a) + b);
  const long double half = 0.5L * (static_cast<long double>(b) - a);
  std::array<long double, kNodes> x{};
  std::array<long double, kNodes> y{};
  double scale = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const long double theta = std::numbers::pi_v<long double> * (2.0L * i + 1.0L) / (2.0L * nodes);
    const double xi = static_cast<double>(mid + half * std::cos(theta));
    x[i] = xi;
    y[i] = static_cast<long double>(poly_eval(rho, xi)) * fx_generic(m, xi);
    scale = std::max(scale, static_cast<double>(std::fabs(y[i])));
  }

  // Newton divided differences in u = t - a, then expand to monomials in u.
  std::array<long double, kNodes> u{};
  for (std::size_t i = 0; i < nodes; ++i) u[i] = x[i] - a;
  std::array<long double, kNodes> dd = y;
  for (std::size_t k = 1; k < nodes; ++k) {
    for (std::size_t i = nodes - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (u[i] - u[i - k]);
  }
  std::array<long double, kNodes> local{};
  for (std::size_t k = nodes; k-- > 0;) {
    // local <- local * (u - u_k) + dd_k
    for (std::size_t j = nodes - 1; j > 0; --j) local[j] = local[j - 1] - u[k] * local[j];
    local[0] = -u[k] * local[0] + dd[k];
  }
  // Shift u = t - a back to global t with binomial expansion.
  std::array<long double, kNodes> global{};
  for (std::size_t k = 0; k < nodes; ++k) {
    long double binom = 1.0L;
    long double power = 1.0L;  // (-a)^(k-j)
    for (std::size_t j = k + 1; j-- > 0;) {
      global[j] += local[k] * binom * power;
      binom = binom * static_cast<long double>(j) / static_cast<long double>(k - j + 1);
      power *= -static_cast<long double>(a);
    }
  }
  Fit fit;
  fit.coeffs.resize(nodes);
  for (std::size_t k = 0; k < nodes; ++k) fit.coeffs[k] = static_cast<double>(global[k]);
  fit.coeffs = poly_trim(std::move(fit.coeffs));
  fit.scale = scale;

  // Interpolation remainder of the exact interpolant p, plus the polynomial
  // p - q bounded through its node values.
  const Interval d = fx_enclosure(m, rho, Interval(a, b), nodes);
  const double omega = 2.0 * std::pow(0.25 * (b - a), static_cast<double>(nodes));
  double node_gap = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const Interval xi(static_cast<double>(x[i]));
    const Interval exact = fx_enclosure(m, rho, xi, 0);
    const Interval fitted = poly_eval_generic(std::span<const double>(fit.coeffs), Series<Interval>(0, xi))[0];
    node_gap = std::max(node_gap, (exact - fitted).mag());
  }
  fit.error = detail::up(d.mag() * omega + kLebesgue * node_gap, 4);
  if (!std::isfinite(fit.error)) fit.error = std::numeric_limits<double>::infinity();
  return fit;
}

// Lowest degree that meets the budget; high degrees on short pieces far from
// the origin amplify rounding in the global-t coefficients.
Fit best_fit(const DualCurrencyMarket& m, const std::vector<double>& rho, double a, double b) {
  Fit best;
  for (std::size_t n = rho.empty() ? 0 : rho.size() - 1; n <= kFitDegree; ++n) {
    Fit fit = fit_piece(m, rho, a, b, n);
    if (fit.error <= kFitRelTol * fit.scale) return fit;
    if (fit.error < best.error) best = std::move(fit);
  }
  return best;
}

}  // namespace

DualCurrencyMarket::DualCurrencyMarket(DiscountCurve domestic_curve, DiscountCurve foreign_curve, double spot_fx)
    : domestic_(std::move(domestic_curve)), foreign_(std::move(foreign_curve)), spot_(spot_fx) {
  if (!(spot_ > 0.0) || !std::isfinite(spot_)) throw UsageError("spot FX must be positive and finite");
  if (!domestic_.is_unit() || !foreign_.is_unit()) throw UsageError("market curves must satisfy P_0 = 1");
  horizon_ = std::min(domestic_.horizon(), foreign_.horizon());
  constexpr int kSamples = 1000;
  for (int k = 0; k <= kSamples; ++k) {
    const double t = horizon_ * k / kSamples;
    const double fx = fx_forward(*this, t);
    if (!std::isfinite(fx) || !(fx > 0.0)) throw UsageError("forward FX is not bounded on the horizon");
  }
}

double fx_forward(const DualCurrencyMarket& m, double t) {
  if (!(t >= 0.0) || t > m.horizon()) throw UsageError("fx_forward: t outside [0, horizon]");
  if (t == 0.0) return m.spot_fx();
  return m.spot_fx() * std::exp(m.foreign_curve().log_discount(t) - m.domestic_curve().log_discount(t));
}

PriceResult price_dual(const DualCurrencyMarket& m, const DualCashFlow& flow, Currency in, double tol) {
  if (!(tol > 0.0)) throw UsageError("price tolerance must be positive");
  // Split the budget so the combined bracket stays within tol.
  const double s = m.spot_fx();
  const PriceResult d = price(m.domestic_curve(), flow.domestic, 0.5 * tol);
  const PriceResult f = price(m.foreign_curve(), flow.foreign, 0.5 * tol / s);
  PriceResult r;
  r.value = d.value + s * f.value;
  r.lower = d.lower + s * f.lower;
  r.upper = d.upper + s * f.upper;
  r.atom_part = d.atom_part + s * f.atom_part;
  r.density_part = d.density_part + s * f.density_part;
  if (in == Currency::foreign) {
    r.value /= s;
    r.lower /= s;
    r.upper /= s;
    r.atom_part /= s;
    r.density_part /= s;
  }
  r.lower = std::min(r.lower, r.value);
  r.upper = std::max(r.upper, r.value);
  return r;
}

ConvertedFlow convert_measure(const DualCurrencyMarket& m, const CashFlow& foreign_gamma) {
  if (foreign_gamma.support_max() > m.horizon()) throw DomainError("cash flow support extends beyond the horizon");
  ConvertedFlow out;
  if (m.domestic_curve() == m.foreign_curve()) {
    out.flow = scale(foreign_gamma, m.spot_fx());
    return out;
  }

  std::vector<Atom> atoms;
  atoms.reserve(foreign_gamma.atoms().size());
  for (const Atom& a : foreign_gamma.atoms()) atoms.push_back({a.t, a.amount * fx_forward(m, a.t)});

  std::vector<double> kinks = m.domestic_curve().kinks();
  const std::vector<double> fk = m.foreign_curve().kinks();
  kinks.insert(kinks.end(), fk.begin(), fk.end());
  std::sort(kinks.begin(), kinks.end());

  std::vector<DensityPiece> pieces;
  double total_error = 0.0;
  for (const DensityPiece& p : foreign_gamma.density()) {
    std::vector<std::pair<double, double>> todo;
    double a = p.from;
    for (double k : kinks) {
      if (k > a && k < p.to) {
        todo.emplace_back(a, k);
        a = k;
      }
    }
    todo.emplace_back(a, p.to);

    std::size_t used = todo.size();
    while (!todo.empty()) {
      const auto [lo, hi] = todo.back();
      todo.pop_back();
      const Fit fit = best_fit(m, p.coeffs, lo, hi);
      if (fit.error <= kFitRelTol * fit.scale) {
        pieces.push_back({lo, hi, fit.coeffs});
        total_error += fit.error * (hi - lo);
        continue;
      }
      const double mid = 0.5 * (lo + hi);
      if (used >= kMaxSubpieces || !(mid > lo && mid < hi)) {
        throw DomainError("convert_measure: fit error budget exceeded after 1024 sub-pieces");
      }
      ++used;
      todo.emplace_back(mid, hi);
      todo.emplace_back(lo, mid);
    }
  }
  out.flow = CashFlow(std::move(atoms), std::move(pieces));
  out.fit_error = detail::up(total_error, 2);
  return out;
}

}  // namespace cfv
