#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcong {

/// Base class for every error raised by the engine.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A series was requested or constructed with order < 1, or an operation
/// needs more known coefficients than the operand carries.
struct invalid_order : error {
    using error::error;
};

/// Constant term is not a unit (only +1/-1 are invertible over the integers).
struct not_invertible : error {
    using error::error;
};

/// Dissection base k = 0.
struct invalid_base : error {
    using error::error;
};

/// Modulus smaller than 2.
struct invalid_modulus : error {
    using error::error;
};

/// Two-parameter theta series f(a, b) with deg(a) + deg(b) < 1.
struct divergent_spec : error {
    using error::error;
};

/// Product form requested for a theta spec that has none tabulated.
struct no_product_form : error {
    using error::error;
};

/// Biregular pair with gcd(ell, mu) != 1.
struct not_coprime : error {
    using error::error;
};

/// Biregular pair with ell < 2 or mu < 2.
struct invalid_constraint : error {
    using error::error;
};

/// Identity id not present in the registry.
struct unknown_identity : error {
    using error::error;
};

/// Claim cannot be checked because the truncation order does not reach the
/// first progression element.
struct truncation_too_small : error {
    using error::error;
};

/// Expression or form text failed to parse; position is a 0-based offset
/// into the input.
struct parse_error : error {
    parse_error(const std::string& what, std::size_t pos)
        : error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

/// Claim file rejected; line is 1-based.
struct claim_file_error : error {
    claim_file_error(const std::string& what, std::size_t line_no)
        : error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
    std::size_t line;
};

}  // namespace qcong
