#pragma once

#include <json.hpp>
#include <string>

#include "msr/codes.hpp"
#include "msr/distance.hpp"
#include "msr/linalg.hpp"
#include "msr/stream.hpp"

namespace msr {

using json = nlohmann::json;

/// {"q": int, "m": int, "modulus": [c_0, ..., c_M]}.
json to_json(const FieldSpec& spec);
/// Validates the spec; DomainError on any schema or field violation.
FieldSpec field_spec_from_json(const json& j);

/// Coefficient array, low degree first, always length M.
json element_to_json(const Gf& a);
Gf element_from_json(const json& j, const FieldPtr& field);

/// {"n", "k", "m", "field", "alpha", "blocks"}; blocks[i][r][c] is an element.
json to_json(const ConvolutionalCode& code);
/// ConstructionError for a code violating its invariants (e.g. singular G_0).
ConvolutionalCode code_from_json(const json& j);

/// "q,M" or "q,M,modulus"; without a modulus the first sparse irreducible is used.
FieldSpec parse_field_arg(const std::string& text);
/// "X^3+1" or a comma-separated coefficient list, low degree first.
Gf parse_element(const std::string& text, const FieldPtr& field);
/// Comma-separated integers.
std::vector<int> parse_int_list(const std::string& text);

json to_json(const DistanceProfile& p);
json to_json(const MsrVerdict& v, std::uint32_t q, int n);
json to_json(const SuperRegularityReport& r);
std::string to_string(SuperRegularity v);

json to_json(const SimReport& r);
/// One row per packet: trial, t, outcome, delay, window_rank.
std::string to_csv(const SimReport& r, int horizon);

/// Adversarial schedule file: {"rhos": [...]} or {"deficiencies": [...]};
/// returns per-shot ranks. DomainError on schema violations.
std::vector<int> pattern_ranks(const json& j, int n);

}  // namespace msr
