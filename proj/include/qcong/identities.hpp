#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcong/series.hpp"

namespace qcong {

/// For records whose right-hand side is a k-dissection, the per-class
/// component expressions with q^k -> q, so class r of the left-hand side can
/// be checked against components[r] directly.
struct dissection_info {
    std::size_t base = 0;
    std::vector<std::string> components;
};

/// One registry entry: two independently buildable sides, compared exactly or
/// modulo `modulus`. The anchor is the citation label of the source display.
struct identity_record {
    std::string id;
    std::string lhs;
    std::string rhs;
    std::optional<std::uint64_t> modulus;
    std::string anchor;
    std::optional<dissection_info> dissection;
};

/// The embedded, immutable identity catalog.
const std::vector<identity_record>& registry();

/// Record lookup; throws unknown_identity.
const identity_record& find_identity(std::string_view id);

struct identity_report {
    std::string id;
    std::size_t order = 0;
    bool holds = false;
    std::optional<std::size_t> first_bad_exponent;
    integer lhs_coeff;  // at the first bad exponent
    integer rhs_coeff;
};

identity_report check_identity(const identity_record& record, std::size_t order);
identity_report check_identity(std::string_view id, std::size_t order);

/// Checks the whole catalog in registry order.
std::vector<identity_report> check_all(std::size_t order, unsigned parallelism = 1);

/// Compares class r of the k-dissection of the record's lhs against the
/// record's r-th component expression, for each r. Requires record.dissection.
std::vector<identity_report> check_dissection(const identity_record& record, std::size_t order);

}  // namespace qcong
