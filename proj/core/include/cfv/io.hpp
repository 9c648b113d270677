#pragma once

#include <string>

#include "cfv/arbitrage.hpp"
#include "cfv/cashflow.hpp"
#include "cfv/discount_curve.hpp"
#include "cfv/dual_functional.hpp"
#include "cfv/fx_market.hpp"

namespace cfv {

// JSON file formats. Parsers throw InputError naming the offending field
// ("density[1].to") for malformed text, missing or unknown keys and values the
// domain types reject. Writers emit the same formats with round-trip doubles.
//
//   cash flow  {"atoms": [{"t", "amount"}], "density": [{"from", "to", "coeffs"}]}
//   curve      {"type": "flat", "i"} | {"type": "spot_grid", "knots": [[t, P]]}
//              | {"type": "svensson", "beta0".."beta3", "tau1", "tau2"},
//              optional "horizon" and "scale" (weight level, default 1)
//   quotes     {"grid": [...], "quotes": [{"left": <cash flow>, "right": <cash flow>}]}
//   market     {"domestic_curve": <curve>, "foreign_curve": <curve>, "spot_fx"}
//   dual       {"f": <curve>, "g": <curve>, "g_unit_check": bool}
//              | {"preset": "double-density", "f": <curve>}

CashFlow parse_cashflow(const std::string& text);
DiscountCurve parse_curve(const std::string& text);
QuoteSet parse_quotes(const std::string& text);
DualCurrencyMarket parse_market(const std::string& text);
DualFunctional parse_dual(const std::string& text);

std::string format_cashflow(const CashFlow& flow);
std::string format_curve(const DiscountCurve& curve);
std::string format_quotes(const QuoteSet& qs);
std::string format_market(const DualCurrencyMarket& m);

/// Whole file as text; InputError(path, ...) when it cannot be read.
std::string read_text_file(const std::string& path);

}  // namespace cfv
