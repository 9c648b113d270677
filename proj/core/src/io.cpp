#include "cfv/io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "cfv/error.hpp"
#include "cfv/polynomial.hpp"

namespace cfv {

namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("", std::string("malformed JSON: ") + e.what());
  }
}

void expect_object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) throw InputError(join(path, item.key()), "unknown field");
  }
}

const json& field(const json& j, const std::string& path, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(join(path, key), "missing field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw InputError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(path, "expected a finite number");
  return v;
}

double number_field(const json& j, const std::string& path, const char* key) {
  return number(field(j, path, key), join(path, key));
}

const json& array_field(const json& j, const std::string& path, const char* key) {
  const json& a = field(j, path, key);
  if (!a.is_array()) throw InputError(join(path, key), "expected an array");
  return a;
}

// Domain validation errors surface as input errors at the object's path.
template <class F>
auto validated(const std::string& path, F make) {
  try {
    return make();
  } catch (const UsageError& e) {
    throw InputError(path.empty() ? "<root>" : path, e.what());
  }
}

CashFlow cashflow_from(const json& j, const std::string& path) {
  expect_object(j, path, {"atoms", "density"});
  std::vector<Atom> atoms;
  std::vector<DensityPiece> pieces;
  if (j.contains("atoms")) {
    const json& a = array_field(j, path, "atoms");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string p = index(join(path, "atoms"), i);
      expect_object(a[i], p, {"t", "amount"});
      const double t = number_field(a[i], p, "t");
      if (t < 0.0) throw InputError(join(p, "t"), "negative time");
      atoms.push_back({t, number_field(a[i], p, "amount")});
    }
  }
  if (j.contains("density")) {
    const json& d = array_field(j, path, "density");
    for (std::size_t i = 0; i < d.size(); ++i) {
      const std::string p = index(join(path, "density"), i);
      expect_object(d[i], p, {"from", "to", "coeffs"});
      DensityPiece piece{number_field(d[i], p, "from"), number_field(d[i], p, "to"), {}};
      if (piece.from < 0.0) throw InputError(join(p, "from"), "negative time");
      if (!(piece.to > piece.from)) throw InputError(join(p, "to"), "must exceed from");
      const json& c = array_field(d[i], p, "coeffs");
      if (c.size() > kMaxDegree + 1) throw InputError(join(p, "coeffs"), "degree exceeds 8");
      for (std::size_t k = 0; k < c.size(); ++k) piece.coeffs.push_back(number(c[k], index(join(p, "coeffs"), k)));
      pieces.push_back(std::move(piece));
    }
  }
  return validated(path, [&] { return CashFlow(std::move(atoms), std::move(pieces)); });
}

json cashflow_to(const CashFlow& flow) {
  json atoms = json::array();
  for (const Atom& a : flow.atoms()) atoms.push_back({{"t", a.t}, {"amount", a.amount}});
  json density = json::array();
  for (const DensityPiece& p : flow.density()) density.push_back({{"from", p.from}, {"to", p.to}, {"coeffs", p.coeffs}});
  return {{"atoms", atoms}, {"density", density}};
}

DiscountCurve curve_from(const json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  const json& type = field(j, path, "type");
  if (!type.is_string()) throw InputError(join(path, "type"), "expected a string");
  const std::string kind = type.get<std::string>();
  const double horizon = j.contains("horizon") ? number_field(j, path, "horizon") : kDefaultHorizon;
  const double level = j.contains("scale") ? number_field(j, path, "scale") : 1.0;

  DiscountCurve::Shape shape;
  if (kind == "flat") {
    expect_object(j, path, {"type", "i", "horizon", "scale"});
    shape = FlatRate{number_field(j, path, "i")};
  } else if (kind == "spot_grid") {
    expect_object(j, path, {"type", "knots", "horizon", "scale"});
    const json& k = array_field(j, path, "knots");
    SpotGrid grid;
    for (std::size_t i = 0; i < k.size(); ++i) {
      const std::string p = index(join(path, "knots"), i);
      if (!k[i].is_array() || k[i].size() != 2) throw InputError(p, "expected [t, discount]");
      grid.knots.push_back({number(k[i][0], index(p, 0)), number(k[i][1], index(p, 1))});
    }
    shape = std::move(grid);
  } else if (kind == "svensson") {
    expect_object(j, path, {"type", "beta0", "beta1", "beta2", "beta3", "tau1", "tau2", "horizon", "scale"});
    shape = SvenssonParams{number_field(j, path, "beta0"), number_field(j, path, "beta1"),
                           number_field(j, path, "beta2"), number_field(j, path, "beta3"),
                           number_field(j, path, "tau1"),  number_field(j, path, "tau2")};
  } else {
    throw InputError(join(path, "type"), "unknown curve type '" + kind + "'");
  }
  return validated(path, [&] { return DiscountCurve::from_shape(std::move(shape), horizon, level); });
}

json curve_to(const DiscountCurve& c) {
  json j;
  if (const auto* f = std::get_if<FlatRate>(&c.shape())) {
    j = {{"type", "flat"}, {"i", f->rate}};
  } else if (const auto* g = std::get_if<SpotGrid>(&c.shape())) {
    json knots = json::array();
    for (const Knot& k : g->knots) knots.push_back({k.t, k.discount});
    j = {{"type", "spot_grid"}, {"knots", knots}};
  } else {
    const auto& s = std::get<SvenssonParams>(c.shape());
    j = {{"type", "svensson"}, {"beta0", s.beta0}, {"beta1", s.beta1}, {"beta2", s.beta2},
         {"beta3", s.beta3},   {"tau1", s.tau1},   {"tau2", s.tau2}};
  }
  j["horizon"] = c.horizon();
  if (!c.is_unit()) j["scale"] = c.level();
  return j;
}

}  // namespace

CashFlow parse_cashflow(const std::string& text) { return cashflow_from(parse_text(text), ""); }

DiscountCurve parse_curve(const std::string& text) { return curve_from(parse_text(text), ""); }

QuoteSet parse_quotes(const std::string& text) {
  const json j = parse_text(text);
  expect_object(j, "", {"grid", "quotes"});
  const json& g = array_field(j, "", "grid");
  std::vector<double> grid;
  for (std::size_t i = 0; i < g.size(); ++i) grid.push_back(number(g[i], index("grid", i)));
  std::vector<Quote> quotes;
  const json& q = array_field(j, "", "quotes");
  for (std::size_t i = 0; i < q.size(); ++i) {
    const std::string p = index("quotes", i);
    expect_object(q[i], p, {"left", "right"});
    quotes.push_back({cashflow_from(field(q[i], p, "left"), join(p, "left")),
                      cashflow_from(field(q[i], p, "right"), join(p, "right"))});
  }
  return validated("quotes", [&] { return QuoteSet(std::move(grid), std::move(quotes)); });
}

DualCurrencyMarket parse_market(const std::string& text) {
  const json j = parse_text(text);
  expect_object(j, "", {"domestic_curve", "foreign_curve", "spot_fx"});
  DiscountCurve d = curve_from(field(j, "", "domestic_curve"), "domestic_curve");
  DiscountCurve f = curve_from(field(j, "", "foreign_curve"), "foreign_curve");
  const double spot = number_field(j, "", "spot_fx");
  return validated("", [&] { return DualCurrencyMarket(std::move(d), std::move(f), spot); });
}

DualFunctional parse_dual(const std::string& text) {
  const json j = parse_text(text);
  if (j.is_object() && j.contains("preset")) {
    expect_object(j, "", {"preset", "f"});
    const json& preset = j["preset"];
    if (!preset.is_string() || preset.get<std::string>() != "double-density") {
      throw InputError("preset", "unknown preset (expected \"double-density\")");
    }
    const DiscountCurve f = curve_from(field(j, "", "f"), "f");
    return validated("f", [&] { return DualFunctional::double_density(f); });
  }
  expect_object(j, "", {"f", "g", "g_unit_check"});
  DiscountCurve f = curve_from(field(j, "", "f"), "f");
  DiscountCurve g = curve_from(field(j, "", "g"), "g");
  if (j.contains("g_unit_check")) {
    const json& check = j["g_unit_check"];
    if (!check.is_boolean()) throw InputError("g_unit_check", "expected a boolean");
    if (check.get<bool>() && !g.is_unit()) throw InputError("g", "g_unit_check requires g(0) = 1");
  }
  return validated("f", [&] { return DualFunctional(std::move(f), std::move(g)); });
}

std::string format_cashflow(const CashFlow& flow) { return cashflow_to(flow).dump(2) + "\n"; }

std::string format_curve(const DiscountCurve& curve) { return curve_to(curve).dump(2) + "\n"; }

std::string format_quotes(const QuoteSet& qs) {
  json quotes = json::array();
  for (const Quote& q : qs.quotes()) quotes.push_back({{"left", cashflow_to(q.left)}, {"right", cashflow_to(q.right)}});
  return json{{"grid", qs.grid()}, {"quotes", quotes}}.dump(2) + "\n";
}

std::string format_market(const DualCurrencyMarket& m) {
  return json{{"domestic_curve", curve_to(m.domestic_curve())},
              {"foreign_curve", curve_to(m.foreign_curve())},
              {"spot_fx", m.spot_fx()}}
             .dump(2) +
         "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot read file");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw InputError(path, "read failed");
  return buf.str();
}

}  // namespace cfv
