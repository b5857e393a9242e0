#include "qcong/claims_io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace qcong {

using nlohmann::json;

json claim_to_json(const congruence_claim& claim) {
    return json{{"ell", claim.ell},          {"mu", claim.mu},
                {"A", claim.step},           {"B", claim.offset},
                {"M", claim.modulus},        {"status", to_string(claim.status)},
                {"anchor", claim.anchor}};
}

congruence_claim claim_from_json(const json& j) {
    if (!j.is_object()) throw error("claim must be a JSON object");
    for (const char* key : {"ell", "mu", "A", "B", "M"}) {
        if (!j.contains(key))
            throw error(std::string("claim is missing the field '") + key + "'");
        if (!j.at(key).is_number_unsigned())
            throw error(std::string("claim field '") + key + "' must be a nonnegative integer");
    }
    congruence_claim claim;
    const auto ell = j.at("ell").get<std::uint64_t>();
    const auto mu = j.at("mu").get<std::uint64_t>();
    if (ell > std::numeric_limits<unsigned>::max() || mu > std::numeric_limits<unsigned>::max())
        throw error("claim pair entries are out of range");
    claim.ell = static_cast<unsigned>(ell);
    claim.mu = static_cast<unsigned>(mu);
    claim.step = j.at("A").get<std::uint64_t>();
    claim.offset = j.at("B").get<std::uint64_t>();
    claim.modulus = j.at("M").get<std::uint64_t>();
    claim.status = j.contains("status") ? claim_status_from_string(j.at("status").get<std::string>())
                                        : claim_status::conjectured_elementary;
    claim.anchor = j.value("anchor", std::string{});
    claim.validate();
    return claim;
}

json report_to_json(const verification_report& report) {
    json j{{"claim", claim_to_json(report.claim)},
           {"N", report.order},
           {"checked_count", report.checked_count},
           {"holds", report.holds},
           {"first_counterexample", nullptr},
           {"kind", "verified-to-order"}};
    if (report.first_counterexample) {
        j["first_counterexample"] = json{{"n", report.first_counterexample->n},
                                         {"coefficient", report.first_counterexample->coefficient.str()}};
    }
    return j;
}

namespace {

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(
                   std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

std::vector<congruence_claim> claims_from_array(const json& arr, const std::string& text) {
    std::vector<congruence_claim> claims;
    claims.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        try {
            claims.push_back(claim_from_json(arr[i]));
        } catch (const error& e) {
            throw claim_file_error("claim #" + std::to_string(i + 1) + ": " + e.what(),
                                   line_of_offset(text, 0));
        }
    }
    return claims;
}

}  // namespace

std::vector<congruence_claim> parse_claims_text(const std::string& text) {
    // Array document, or one claim object per line.
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw claim_file_error("claim file is empty", 1);
    if (text[first] == '[') {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            throw claim_file_error(e.what(), line_of_offset(text, e.byte));
        }
        return claims_from_array(doc, text);
    }

    std::vector<congruence_claim> claims;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw claim_file_error(e.what(), line_no);
        }
        try {
            claims.push_back(claim_from_json(j));
        } catch (const claim_file_error&) {
            throw;
        } catch (const error& e) {
            throw claim_file_error(e.what(), line_no);
        }
    }
    if (claims.empty()) throw claim_file_error("claim file holds no claims", 1);
    return claims;
}

std::vector<congruence_claim> load_claims_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open claims file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_claims_text(buf.str());
}

}  // namespace qcong
