#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "modeq/newton.hpp"
#include "modeq/numeric.hpp"
#include "modeq/params.hpp"

namespace modeq {

inline constexpr const char* kToolVersion = "0.1.0";

// Text rendering: descending X-powers, each coefficient a normal-form
// expression in J, G2, G3. parse_equation_text accepts exactly what
// render_equation_text emits.
std::string render_equation_text(const ModEqPoly<Rat>& eq);
ModEqPoly<Rat> parse_equation_text(const std::string& text);

// Equation as JSON: array of {fdeg, terms: [{jdeg, g2, g3, coeff}]} with
// coefficients as decimal strings.
nlohmann::json equation_to_json(const ModEqPoly<Rat>& eq);
ModEqPoly<Rat> equation_from_json(const nlohmann::json& j);

// Series as JSON: {denom, val, trunc, coeffs: [decimal strings]}.
nlohmann::json series_to_json(const FracSeries<Rat>& s);
FracSeries<Rat> series_from_json(const nlohmann::json& j);

// Cache / interchange unit: the equation plus provenance and verification.
struct EquationRecord {
    std::string kind;  // "kiepert" or "double-eta"
    std::string label;
    long long p = 0;                 // kiepert
    std::optional<ParamSet> params;  // double-eta
    int sign_theorem = 0;
    ModEqPoly<Rat> equation;
    std::optional<VerifyReport> verification;
    std::string tool_version = kToolVersion;
    std::string timestamp;
};

nlohmann::json record_to_json(const EquationRecord& rec);
EquationRecord record_from_json(const nlohmann::json& j);

// Returns the path written, <dir>/<kind>-<params>.json.
std::string write_record_to_cache(const EquationRecord& rec, const std::string& dir);

std::string iso8601_now();

} // namespace modeq
