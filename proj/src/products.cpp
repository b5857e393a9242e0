#include "qcong/products.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace qcong {

product_spec canonicalize(const product_spec& spec) {
    std::map<unsigned, long long> merged;
    for (const auto& f : spec.factors) {
        if (f.scale == 0) throw error("eta factor scale must be >= 1");
        merged[f.scale] += f.exponent;
    }
    product_spec out;
    for (const auto& [scale, exponent] : merged)
        if (exponent != 0) out.factors.push_back({scale, exponent});
    return out;
}

std::string to_string(const product_spec& spec) {
    if (spec.factors.empty()) return "1";
    std::string s;
    for (const auto& f : spec.factors) {
        if (!s.empty()) s += " * ";
        s += "f" + std::to_string(f.scale);
        if (f.exponent != 1) s += "^" + std::to_string(f.exponent);
    }
    return s;
}

std::string to_string(const theta_spec& spec) {
    auto arg = [](int sign, unsigned t) {
        std::string a = sign < 0 ? "-q" : "q";
        if (t != 1) a += "^" + std::to_string(t);
        return a;
    };
    switch (spec.kind) {
        case theta_kind::phi: return "phi(" + arg(spec.sign, spec.scale) + ")";
        case theta_kind::psi: return "psi(" + arg(spec.sign, spec.scale) + ")";
        case theta_kind::chi: return "chi(" + arg(spec.sign, spec.scale) + ")";
        case theta_kind::general_f:
            return "f(" + arg(spec.sign_a, spec.exp_a) + "," + arg(spec.sign_b, spec.exp_b) + ")";
    }
    return {};
}

namespace {

/* f_1 = sum_{j in Z} (-1)^j q^{j(3j-1)/2}: exponents 0, 1, 2, 5, 7, 12, 15,
 * 22, ... with sign (-1)^j. O(sqrt(order)) nonzero terms. */
truncated_series euler_f1(std::size_t order) {
    std::vector<integer> c(order);
    c[0] = 1;
    for (unsigned long long j = 1;; ++j) {
        const unsigned long long g1 = j * (3 * j - 1) / 2;
        const unsigned long long g2 = j * (3 * j + 1) / 2;
        if (g1 >= order) break;
        const int sign = (j % 2 == 0) ? 1 : -1;
        c[g1] += sign;
        if (g2 < order) c[g2] += sign;
    }
    return truncated_series(std::move(c));
}

/* Memo for f_1^k at a given order. Everything else reindexes these, so the
 * identity suite stops re-deriving the same inversions. Guarded by a mutex;
 * concurrent misses may compute the same entry, with identical results. */
std::mutex f1_cache_mutex;
std::map<std::pair<long long, std::size_t>, std::shared_ptr<const truncated_series>> f1_cache;

std::shared_ptr<const truncated_series> f1_power(long long exponent, std::size_t order) {
    const std::pair<long long, std::size_t> key{exponent, order};
    {
        std::lock_guard<std::mutex> lock(f1_cache_mutex);
        if (auto it = f1_cache.find(key); it != f1_cache.end()) return it->second;
    }
    auto value = std::make_shared<const truncated_series>(pow(euler_f1(order), exponent));
    std::lock_guard<std::mutex> lock(f1_cache_mutex);
    auto [it, inserted] = f1_cache.emplace(key, std::move(value));
    return it->second;
}

}  // namespace

truncated_series eta_power(unsigned scale, long long exponent, std::size_t order) {
    if (scale == 0) throw error("eta factor scale must be >= 1");
    if (order == 0) throw invalid_order("order must be >= 1");
    if (exponent == 0) return truncated_series::one(order);

    /* f_n^k (q) = f_1^k (q^n): expand at the reduced order ceil(order/n) and
     * spread the coefficients to multiples of n. */
    const std::size_t reduced = (order + scale - 1) / scale;
    const auto base = f1_power(exponent, reduced);
    if (scale == 1) return *base;

    std::vector<integer> c(order);
    for (std::size_t i = 0; i < base->order(); ++i) {
        const std::size_t e = i * static_cast<std::size_t>(scale);
        if (e >= order) break;
        c[e] = (*base)[i];
    }
    return truncated_series(std::move(c));
}

truncated_series eta_quotient(const product_spec& spec, std::size_t order) {
    if (order == 0) throw invalid_order("order must be >= 1");
    const product_spec canon = canonicalize(spec);

    truncated_series numerator = truncated_series::one(order);
    truncated_series denominator = truncated_series::one(order);
    bool have_den = false;
    for (const auto& f : canon.factors) {
        if (f.exponent > 0) {
            numerator = mul(numerator, eta_power(f.scale, f.exponent, order));
        } else {
            denominator = mul(denominator, eta_power(f.scale, -f.exponent, order));
            have_den = true;
        }
    }
    if (!have_den) return numerator;
    return mul(numerator, invert(denominator));
}

namespace {

int sign_pow(int sign, unsigned long long exponent) {
    return (sign < 0 && (exponent & 1ULL)) ? -1 : 1;
}

truncated_series expand_phi(int sign, unsigned scale, std::size_t order) {
    std::vector<integer> c(order);
    c[0] = 1;
    for (unsigned long long n = 1; scale * n * n < order; ++n)
        c[scale * n * n] += 2 * sign_pow(sign, n * n);
    return truncated_series(std::move(c));
}

truncated_series expand_psi(int sign, unsigned scale, std::size_t order) {
    std::vector<integer> c(order);
    for (unsigned long long n = 0;; ++n) {
        const unsigned long long t = n * (n + 1) / 2;
        if (scale * t >= order) break;
        c[scale * t] += sign_pow(sign, t);
    }
    return truncated_series(std::move(c));
}

/* f(a, b) over k in Z with a = sign_a q^r, b = sign_b q^s. The exponent
 * r k(k+1)/2 + s k(k-1)/2 is nonnegative and grows monotonically in both
 * directions once |k| >= 1, so each sweep stops at the first overflow of the
 * truncation order. */
truncated_series expand_general_f(const theta_spec& spec, std::size_t order) {
    const unsigned long long r = spec.exp_a;
    const unsigned long long s = spec.exp_b;
    if (r + s < 1) throw divergent_spec("f(a,b) needs deg(a) + deg(b) >= 1");

    std::vector<integer> c(order);
    auto account = [&](long long k) {
        const unsigned long long t1 = static_cast<unsigned long long>(k * (k + 1) / 2);
        const unsigned long long t2 = static_cast<unsigned long long>(k * (k - 1) / 2);
        const unsigned long long e = r * t1 + s * t2;
        if (e >= order) return false;
        c[e] += sign_pow(spec.sign_a, t1) * sign_pow(spec.sign_b, t2);
        return true;
    };
    for (long long k = 0; account(k); ++k) {
    }
    for (long long k = -1; account(k); --k) {
    }
    return truncated_series(std::move(c));
}

}  // namespace

truncated_series theta_expand(const theta_spec& spec, std::size_t order) {
    if (order == 0) throw invalid_order("order must be >= 1");
    if (spec.kind != theta_kind::general_f && spec.scale == 0)
        throw error("theta scale must be >= 1");
    switch (spec.kind) {
        case theta_kind::phi: return expand_phi(spec.sign, spec.scale, order);
        case theta_kind::psi: return expand_psi(spec.sign, spec.scale, order);
        case theta_kind::chi:
            // No summation form; the product form is the defining expansion.
            return eta_quotient(theta_product_form(spec), order);
        case theta_kind::general_f: return expand_general_f(spec, order);
    }
    throw error("unreachable theta kind");
}

product_spec theta_product_form(const theta_spec& spec) {
    const unsigned t = spec.scale;
    const bool neg = spec.sign < 0;
    switch (spec.kind) {
        case theta_kind::phi:
            if (neg) return {{{t, 2}, {2 * t, -1}}};
            return {{{2 * t, 5}, {t, -2}, {4 * t, -2}}};
        case theta_kind::psi:
            if (neg) return {{{t, 1}, {4 * t, 1}, {2 * t, -1}}};
            return {{{2 * t, 2}, {t, -1}}};
        case theta_kind::chi:
            if (neg) return {{{t, 1}, {2 * t, -1}}};
            return {{{2 * t, 2}, {t, -1}, {4 * t, -1}}};
        case theta_kind::general_f:
            throw no_product_form("f(a,b) has no tabulated product form");
    }
    throw error("unreachable theta kind");
}

}  // namespace qcong
