#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qcong/series.hpp"

namespace qcong {

/// One factor f_n^k of an eta quotient, where f_n = prod_{j>=1} (1 - q^{jn}).
struct eta_factor {
    unsigned scale = 1;       // n > 0
    long long exponent = 1;   // k, any sign
    friend bool operator==(const eta_factor&, const eta_factor&) = default;
};

/// A finite product prod f_{n_i}^{k_i}. Factors may repeat a scale; the
/// canonical form merges them, drops zero exponents and sorts by scale, and
/// two specs with equal canonical form expand identically.
struct product_spec {
    std::vector<eta_factor> factors;
    friend bool operator==(const product_spec&, const product_spec&) = default;
};

product_spec canonicalize(const product_spec& spec);

/// Text form used by the CLI and the identity registry, e.g.
/// "f2^5 * f1^-2 * f4^-2".
std::string to_string(const product_spec& spec);

enum class theta_kind { phi, psi, chi, general_f };

/// phi/psi/chi(sign * q^scale), or the two-parameter series
/// f(sign_a * q^exp_a, sign_b * q^exp_b).
struct theta_spec {
    theta_kind kind = theta_kind::phi;
    int sign = 1;
    unsigned scale = 1;
    int sign_a = 1, sign_b = 1;
    unsigned exp_a = 0, exp_b = 0;

    static theta_spec phi(int sign = 1, unsigned scale = 1) {
        return {theta_kind::phi, sign, scale, 1, 1, 0, 0};
    }
    static theta_spec psi(int sign = 1, unsigned scale = 1) {
        return {theta_kind::psi, sign, scale, 1, 1, 0, 0};
    }
    static theta_spec chi(int sign = 1, unsigned scale = 1) {
        return {theta_kind::chi, sign, scale, 1, 1, 0, 0};
    }
    static theta_spec general(int sign_a, unsigned exp_a, int sign_b, unsigned exp_b) {
        return {theta_kind::general_f, 1, 1, sign_a, sign_b, exp_a, exp_b};
    }

    friend bool operator==(const theta_spec&, const theta_spec&) = default;
};

/// Text form, e.g. "phi(-q^3)", "psi(q)", "f(-q^12,-q^60)".
std::string to_string(const theta_spec& spec);

/// Expansion of f_n^k mod q^order. f_1 itself is generated sparsely from the
/// pentagonal number series sum_j (-1)^j q^{j(3j-1)/2}; general scales are
/// reindexings of f_1^k at a reduced order, so inversion for k < 0 also runs
/// at the reduced order. Results are memoised internally; the cache is
/// invisible apart from speed.
truncated_series eta_power(unsigned scale, long long exponent, std::size_t order);

/// Expansion of a full eta quotient: the positive-exponent factors are
/// multiplied first and the merged negative block is inverted once, keeping
/// intermediate coefficients small.
truncated_series eta_quotient(const product_spec& spec, std::size_t order);

/// Sparse summation expansions:
///   phi(x)  = 1 + 2 sum_{n>=1} x^{n^2}
///   psi(x)  = sum_{n>=0} x^{n(n+1)/2}
///   f(a, b) = sum_{k in Z} a^{k(k+1)/2} b^{k(k-1)/2}
/// chi has no summation form and expands through its product form.
truncated_series theta_expand(const theta_spec& spec, std::size_t order);

/// The tabulated eta-product form, scales multiplied by spec.scale:
///   phi(q) = f2^5 / (f1^2 f4^2)   phi(-q) = f1^2 / f2
///   psi(q) = f2^2 / f1            psi(-q) = f1 f4 / f2
///   chi(q) = f2^2 / (f1 f4)       chi(-q) = f1 / f2
/// general_f has no tabulated product form.
product_spec theta_product_form(const theta_spec& spec);

}  // namespace qcong
