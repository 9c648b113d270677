#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "cfv/arbitrage.hpp"
#include "cfv/cashflow.hpp"
#include "cfv/discount_curve.hpp"
#include "cfv/dual_functional.hpp"
#include "cfv/error.hpp"
#include "cfv/fx_market.hpp"
#include "cfv/io.hpp"
#include "cfv/pricer.hpp"

namespace cfv::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string curve;
  std::string cashflow;
  std::string foreign;
  std::string quotes;
  std::string market;
  std::string dual;
  std::string out;
  std::string format = "text";
  std::string currency = "domestic";
  std::optional<double> t;
  std::optional<double> tol;
  std::optional<double> target;
  double from = 0.0;
  double to = 10.0;
  double step = 1.0;
  int precision = 6;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
};

class Printer {
 public:
  explicit Printer(int precision) : precision_(precision) {}

  std::string num(double x) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision_, x);
    std::string s = buf;
    // Fixed-point rounding of tiny negatives gives "-0.000000".
    if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
  }

  std::string bracketed(const PriceResult& r) const {
    return num(r.value) + " [" + num(r.lower) + ", " + num(r.upper) + "]";
  }

 private:
  int precision_;
};

json price_json(const PriceResult& r) {
  return {{"value", r.value},         {"lower", r.lower},
          {"upper", r.upper},         {"atom_part", r.atom_part},
          {"density_part", r.density_part}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

template <class F>
auto load(const std::string& path, F parse) {
  try {
    return parse(read_text_file(path));
  } catch (const InputError& e) {
    if (e.where() == path) throw;
    throw InputError(path, e.what());
  }
}

CashFlow load_cashflow(const std::string& path) { return load(path, parse_cashflow); }

double tolerance_for(const Options& o, const CashFlow& gamma) {
  if (!o.tol) return default_tolerance(gamma);
  if (!(*o.tol > 0.0)) throw UsageError("--tol must be positive");
  return *o.tol;
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing required flag ") + flag);
}

std::string describe_flow(const CashFlow& flow, const Printer& p) {
  std::ostringstream s;
  if (flow.is_null()) {
    s << "  (null)\n";
    return s.str();
  }
  for (const Atom& a : flow.atoms()) s << "  atom t=" << p.num(a.t) << " amount=" << p.num(a.amount) << "\n";
  for (const DensityPiece& d : flow.density()) {
    s << "  density [" << p.num(d.from) << ", " << p.num(d.to) << ") coeffs";
    for (double c : d.coeffs) s << " " << p.num(c);
    s << "\n";
  }
  return s.str();
}

std::string cmd_price(const Options& o, bool forward) {
  require(o.curve, "--curve");
  require(o.cashflow, "--cashflow");
  const DiscountCurve curve = load(o.curve, parse_curve);
  const CashFlow gamma = load_cashflow(o.cashflow);
  const double tol = tolerance_for(o, gamma);
  PriceResult r;
  if (forward) {
    if (!o.t) throw UsageError("missing required flag --t");
    r = forward_price(curve, gamma, *o.t, tol);
  } else {
    r = price(curve, gamma, tol);
  }
  if (o.format == "structured") return dump(price_json(r));
  return Printer(o.precision).bracketed(r) + "\n";
}

std::string cmd_irr(const Options& o) {
  require(o.cashflow, "--cashflow");
  const CashFlow gamma = load_cashflow(o.cashflow);
  const double r = o.t.value_or(0.0);
  const double tol = tolerance_for(o, gamma);
  double target = 0.0;
  if (o.target) {
    if (!o.curve.empty()) throw UsageError("--target and --curve are mutually exclusive");
    target = *o.target;
  } else if (!o.curve.empty()) {
    target = forward_price(load(o.curve, parse_curve), gamma, r, tol / 16.0).value;
  } else {
    throw UsageError("irr needs --target PRICE or --curve FILE");
  }
  const YieldResult y = irr(gamma, r, target, tol);
  if (o.format == "structured") {
    return dump({{"rate", y.rate}, {"residual", y.residual}, {"iterations", y.iterations}, {"target", target}});
  }
  return Printer(o.precision).num(y.rate) + "\n";
}

std::string cmd_decompose(const Options& o) {
  require(o.cashflow, "--cashflow");
  const CashFlow gamma = load_cashflow(o.cashflow);
  const JordanPair j = jordan(gamma);
  const LebesguePair l = lebesgue_decompose(gamma);
  if (o.format == "structured") {
    auto flow = [](const CashFlow& f) { return json::parse(format_cashflow(f)); };
    return dump({{"jordan", {{"positive", flow(j.positive)}, {"negative", flow(j.negative)}}},
                 {"lebesgue", {{"absolutely_continuous", flow(l.ac)}, {"singular", flow(l.singular)}}}});
  }
  const Printer p(o.precision);
  std::string s;
  s += "positive part (total mass " + p.num(j.positive.total_mass()) + ")\n" + describe_flow(j.positive, p);
  s += "negative part (total mass " + p.num(j.negative.total_mass()) + ")\n" + describe_flow(j.negative, p);
  s += "absolutely continuous part\n" + describe_flow(l.ac, p);
  s += "singular part\n" + describe_flow(l.singular, p);
  return s;
}

Currency parse_currency(const std::string& c) { return c == "foreign" ? Currency::foreign : Currency::domestic; }

std::string cmd_fx_price(const Options& o) {
  require(o.market, "--market");
  if (o.cashflow.empty() && o.foreign.empty()) throw UsageError("fx-price needs --cashflow and/or --foreign");
  const DualCurrencyMarket m = load(o.market, parse_market);
  DualCashFlow flow;
  if (!o.cashflow.empty()) flow.domestic = load_cashflow(o.cashflow);
  if (!o.foreign.empty()) flow.foreign = load_cashflow(o.foreign);
  const double tol = o.tol ? tolerance_for(o, flow.domestic)
                           : default_tolerance(flow.domestic) + m.spot_fx() * default_tolerance(flow.foreign);
  const PriceResult r = price_dual(m, flow, parse_currency(o.currency), tol);
  if (o.format == "structured") return dump(price_json(r));
  return Printer(o.precision).bracketed(r) + "\n";
}

std::string cmd_fx_convert(const Options& o) {
  require(o.market, "--market");
  require(o.cashflow, "--cashflow");
  const DualCurrencyMarket m = load(o.market, parse_market);
  const ConvertedFlow c = convert_measure(m, load_cashflow(o.cashflow));
  if (o.format == "structured") return format_cashflow(c.flow);
  const Printer p(o.precision);
  char err[32];
  std::snprintf(err, sizeof err, "%.3e", c.fit_error);
  return "domestic flow (certified fit error " + std::string(err) + ")\n" + describe_flow(c.flow, p);
}

std::string cmd_arbitrage(const Options& o) {
  require(o.quotes, "--quotes");
  const QuoteSet qs = load(o.quotes, parse_quotes);
  const NaVerdict verdict = check(qs);
  const Printer p(o.precision);

  if (const auto* a = std::get_if<Arbitrage>(&verdict)) {
    if (o.format == "structured") {
      return dump({{"verdict", "ARBITRAGE"},
                   {"coefficients", a->coefficients},
                   {"portfolio", json::parse(format_cashflow(a->portfolio))}});
    }
    std::string s = "ARBITRAGE\ncoefficients:";
    for (double c : a->coefficients) s += " " + p.num(c);
    s += "\nportfolio (exchangeable for nothing):\n" + describe_flow(a->portfolio, p);
    return s;
  }

  const auto& free = std::get<ArbitrageFree>(verdict);
  std::optional<DiscountCurve> curve;
  std::string uniqueness;
  try {
    curve = implied_curve(qs);
  } catch (const DomainError& e) {
    uniqueness = e.what();
  }
  if (o.format == "structured") {
    json implied = json::array();
    for (std::size_t j = 0; j < qs.grid().size(); ++j) implied.push_back({qs.grid()[j], free.implied[j]});
    json j = {{"verdict", "ARBITRAGE_FREE"}, {"implied", implied}, {"margin", free.margin}};
    if (curve) j["curve"] = json::parse(format_curve(*curve));
    return dump(j);
  }
  std::string s = "ARBITRAGE_FREE\nimplied prices:\n";
  for (std::size_t j = 0; j < qs.grid().size(); ++j) {
    s += "  t=" + p.num(qs.grid()[j]) + " P=" + p.num(free.implied[j]) + "\n";
  }
  s += curve ? "unique: yes\n" : "unique: no (" + uniqueness + ")\n";
  return s;
}

std::string cmd_curve_eval(const Options& o) {
  require(o.curve, "--curve");
  if (!(o.step > 0.0)) throw UsageError("--step must be positive");
  if (!(o.from >= 0.0) || !(o.to >= o.from)) throw UsageError("need 0 <= --from <= --to");
  const DiscountCurve curve = load(o.curve, parse_curve);
  if (o.to > curve.horizon()) throw DomainError("--to lies beyond the curve horizon");
  const Printer p(o.precision);
  std::string s = "t,discount,spot_rate,forward_rate\n";
  const auto n = static_cast<std::size_t>(std::floor((o.to - o.from) / o.step + 1e-9));
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = o.from + static_cast<double>(k) * o.step;
    s += p.num(t) + "," + p.num(discount(curve, t)) + ",";
    if (t == 0.0) {
      s += "-,-\n";
    } else {
      s += p.num(spot_rate(curve, t)) + "," + p.num(forward_rate(curve, 0.0, t)) + "\n";
    }
  }
  return s;
}

std::string cmd_counterexample(const Options& o) {
  require(o.dual, "--dual");
  require(o.cashflow, "--cashflow");
  const DualFunctional df = load(o.dual, parse_dual);
  const CashFlow gamma = load_cashflow(o.cashflow);
  const double tol = tolerance_for(o, gamma);
  const PriceResult dual = dual_price(df, gamma, tol);
  const PriceResult choquet = price(df.atomic_curve(), gamma, tol);
  const PositivityReport report = verify_na_positivity(df, o.trials, o.seed);
  if (o.format == "structured") {
    return dump({{"dual_price", price_json(dual)},
                 {"choquet_price", price_json(choquet)},
                 {"gap", dual.value - choquet.value},
                 {"positivity", {{"trials", report.trials}, {"passed", report.passed}, {"failures", report.failures}}}});
  }
  const Printer p(o.precision);
  std::string s;
  s += "dual price:    " + p.bracketed(dual) + "\n";
  s += "choquet price: " + p.bracketed(choquet) + "\n";
  s += "gap:           " + p.num(dual.value - choquet.value) + "\n";
  s += "no-arbitrage trials: " + std::to_string(report.passed) + "/" + std::to_string(report.trials) + " passed\n";
  for (const std::string& f : report.failures) s += "  " + f + "\n";
  return s;
}

void common_flags(CLI::App* sub, Options& o) {
  sub->add_option("--tol", o.tol, "Absolute bracket width (default 1e-10 * (1 + total variation))");
  sub->add_option("--precision", o.precision, "Decimals printed")->check(CLI::Range(0, 17));
  sub->add_option("--out", o.out, "Write output to FILE instead of stdout");
  sub->add_option("--format", o.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Cash-flow valuation engine", "cfv"};
  app.require_subcommand(1);

  auto* price_cmd = app.add_subcommand("price", "Spot price of a cash flow with its certified bracket");
  price_cmd->add_option("--curve", o.curve, "Curve file")->required();
  price_cmd->add_option("--cashflow", o.cashflow, "Cash-flow file")->required();

  auto* fwd = app.add_subcommand("forward-price", "Time-t forward price pi(gamma) / P_t");
  fwd->add_option("--curve", o.curve, "Curve file")->required();
  fwd->add_option("--cashflow", o.cashflow, "Cash-flow file")->required();
  fwd->add_option("--t", o.t, "Delivery time")->required();

  auto* irr_cmd = app.add_subcommand("irr", "Constant yield of a nonnegative cash flow");
  irr_cmd->add_option("--cashflow", o.cashflow, "Cash-flow file")->required();
  irr_cmd->add_option("--target", o.target, "Purchase price (forward, at time --t)");
  irr_cmd->add_option("--curve", o.curve, "Price at the curve's forward price instead of --target");
  irr_cmd->add_option("--t", o.t, "Purchase time (default 0)");

  auto* dec = app.add_subcommand("decompose", "Hahn-Jordan and Lebesgue decompositions");
  dec->add_option("--cashflow", o.cashflow, "Cash-flow file")->required();

  auto* fxp = app.add_subcommand("fx-price", "Price of a two-currency cash flow");
  fxp->add_option("--market", o.market, "Market file")->required();
  fxp->add_option("--cashflow", o.cashflow, "Domestic cash-flow file");
  fxp->add_option("--foreign", o.foreign, "Foreign cash-flow file");
  fxp->add_option("--currency", o.currency, "domestic or foreign")->check(CLI::IsMember({"domestic", "foreign"}));

  auto* fxc = app.add_subcommand("fx-convert", "Foreign cash flow as an equivalent domestic one");
  fxc->add_option("--market", o.market, "Market file")->required();
  fxc->add_option("--cashflow", o.cashflow, "Foreign cash-flow file")->required();

  auto* arb = app.add_subcommand("arbitrage-check", "No-arbitrage verdict for a quote set");
  arb->add_option("--quotes", o.quotes, "Quote-set file")->required();

  auto* ce = app.add_subcommand("curve-eval", "CSV rows t,discount,spot_rate,forward_rate");
  ce->add_option("--curve", o.curve, "Curve file")->required();
  ce->add_option("--from", o.from, "First time (default 0)");
  ce->add_option("--to", o.to, "Last time (default 10)");
  ce->add_option("--step", o.step, "Spacing (default 1)");

  auto* cx = app.add_subcommand("counterexample", "Dual functional versus the integral price");
  cx->add_option("--dual", o.dual, "Dual-functional file")->required();
  cx->add_option("--cashflow", o.cashflow, "Cash-flow file")->required();
  cx->add_option("--trials", o.trials, "Random no-arbitrage trials (default 1000)");
  cx->add_option("--seed", o.seed, "Trial seed (default 1)");

  for (auto* sub : {price_cmd, fwd, irr_cmd, dec, fxp, fxc, arb, ce, cx}) common_flags(sub, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::string text;
  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "price") {
      text = cmd_price(o, false);
    } else if (name == "forward-price") {
      text = cmd_price(o, true);
    } else if (name == "irr") {
      text = cmd_irr(o);
    } else if (name == "decompose") {
      text = cmd_decompose(o);
    } else if (name == "fx-price") {
      text = cmd_fx_price(o);
    } else if (name == "fx-convert") {
      text = cmd_fx_convert(o);
    } else if (name == "arbitrage-check") {
      text = cmd_arbitrage(o);
    } else if (name == "curve-eval") {
      text = cmd_curve_eval(o);
    } else {
      text = cmd_counterexample(o);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out, std::ios::binary);
    file << text;
    if (!file) {
      err << "error: " << o.out << ": cannot write file\n";
      return 2;
    }
  }
  return 0;
}

}  // namespace cfv::cli
