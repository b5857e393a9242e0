#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qcong/congruence.hpp"

namespace qcong {

/// {"ell":2,"mu":3,"A":9,"B":6,"M":6,"status":"theorem","anchor":"Thm 3.1"}
/// status defaults to "conjectured-elementary" and anchor to "" when absent.
nlohmann::json claim_to_json(const congruence_claim& claim);
congruence_claim claim_from_json(const nlohmann::json& j);

/// One JSON-lines verification record:
/// {"claim":{...},"N":...,"checked_count":...,"holds":...,
///  "first_counterexample":null|{"n":...,"coefficient":"<decimal>"},
///  "kind":"verified-to-order"}
nlohmann::json report_to_json(const verification_report& report);

/// Parses a claim file: either a JSON array of claim objects or one claim
/// object per line. Raises claim_file_error with a 1-based line number on
/// malformed input.
std::vector<congruence_claim> parse_claims_text(const std::string& text);
std::vector<congruence_claim> load_claims_file(const std::string& path);

}  // namespace qcong
