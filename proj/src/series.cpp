#include "qcong/series.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace qcong {

truncated_series from_coeffs(std::vector<integer> values) {
    return truncated_series(std::move(values));
}

truncated_series add(const truncated_series& a, const truncated_series& b) {
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<integer> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
    return truncated_series(std::move(out));
}

truncated_series sub(const truncated_series& a, const truncated_series& b) {
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<integer> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
    return truncated_series(std::move(out));
}

truncated_series negate(const truncated_series& a) {
    std::vector<integer> out(a.order());
    for (std::size_t i = 0; i < a.order(); ++i) out[i] = -a[i];
    return truncated_series(std::move(out));
}

truncated_series scale(const integer& c, const truncated_series& a) {
    std::vector<integer> out(a.order());
    for (std::size_t i = 0; i < a.order(); ++i) out[i] = c * a[i];
    return truncated_series(std::move(out));
}

namespace {

std::size_t count_nonzero(const truncated_series& s, std::size_t upto) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < upto; ++i)
        if (!s[i].is_zero()) ++n;
    return n;
}

}  // namespace

truncated_series mul(const truncated_series& a, const truncated_series& b) {
    const std::size_t n = std::min(a.order(), b.order());

    /* Put the operand with fewer nonzero coefficients in the outer loop so
     * that a sparse factor (a theta series, a reindexed Euler product) costs
     * only nnz passes over the dense one. */
    const truncated_series* outer = &a;
    const truncated_series* inner = &b;
    if (count_nonzero(b, n) < count_nonzero(a, n)) std::swap(outer, inner);

    std::vector<integer> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const integer& ci = (*outer)[i];
        if (ci.is_zero()) continue;
        const std::size_t limit = n - i;
        for (std::size_t j = 0; j < limit; ++j) {
            const integer& cj = (*inner)[j];
            if (!cj.is_zero()) out[i + j] += ci * cj;
        }
    }
    return truncated_series(std::move(out));
}

truncated_series invert(const truncated_series& a) {
    const integer& a0 = a[0];
    if (a0 != 1 && a0 != -1)
        throw not_invertible("constant term " + a0.str() + " is not a unit");

    const std::size_t n = a.order();

    /* Nonzero tail terms of a, gathered once; the recurrence below then only
     * touches them. */
    std::vector<std::pair<std::size_t, const integer*>> tail;
    for (std::size_t i = 1; i < n; ++i)
        if (!a[i].is_zero()) tail.emplace_back(i, &a[i]);

    /* If b = 1/a then sum_{i=0..m} a_i b_{m-i} = 0 for m >= 1, giving the
     * linear recurrence b_m = -a_0^{-1} sum_{i=1..m} a_i b_{m-i}, with
     * a_0^{-1} = a_0 since a_0 = +-1. */
    std::vector<integer> b(n);
    b[0] = a0;
    const bool flip = (a0 == 1);
    integer acc;
    for (std::size_t m = 1; m < n; ++m) {
        acc = 0;
        for (const auto& [i, ai] : tail) {
            if (i > m) break;
            acc += (*ai) * b[m - i];
        }
        b[m] = flip ? integer(-acc) : acc;
    }
    return truncated_series(std::move(b));
}

truncated_series pow(const truncated_series& a, long long k) {
    if (k == 0) return truncated_series::one(a.order());
    if (k < 0) return pow(invert(a), -k);
    if (k == 1) return a;

    truncated_series result = truncated_series::one(a.order());
    truncated_series base = a;
    unsigned long long e = static_cast<unsigned long long>(k);
    while (true) {
        if (e & 1ULL) result = mul(result, base);
        e >>= 1;
        if (e == 0) break;
        base = mul(base, base);
    }
    return result;
}

truncated_series truncate(const truncated_series& a, std::size_t new_order) {
    if (new_order == 0 || new_order > a.order())
        throw invalid_order("truncation order must be in [1, " + std::to_string(a.order()) + "]");
    std::vector<integer> out(a.coeffs().begin(), a.coeffs().begin() + static_cast<long>(new_order));
    return truncated_series(std::move(out));
}

dissection_parts dissect(const truncated_series& a, std::size_t k) {
    if (k == 0) throw invalid_base("dissection base must be >= 1");
    if (a.order() < k)
        throw invalid_order("series order " + std::to_string(a.order()) +
                            " is smaller than dissection base " + std::to_string(k));

    dissection_parts d;
    d.base = k;
    d.parts.reserve(k);
    for (std::size_t r = 0; r < k; ++r) {
        /* The coefficients of q^{kn+r} with kn+r < order; the last residue
         * classes may carry one coefficient fewer, never a padded zero. */
        const std::size_t m = (a.order() - r + k - 1) / k;
        std::vector<integer> c(m);
        for (std::size_t i = 0; i < m; ++i) c[i] = a[k * i + r];
        d.parts.emplace_back(std::move(c));
    }
    return d;
}

truncated_series reassemble(const dissection_parts& parts) {
    const std::size_t k = parts.base;
    if (k == 0 || parts.parts.size() != k)
        throw invalid_base("dissection has " + std::to_string(parts.parts.size()) +
                           " parts for base " + std::to_string(k));

    /* q^{kn+r} is known for n < parts[r].order; the reassembled series is
     * known up to the smallest exponent missing from every class. */
    std::size_t n = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = 0; r < k; ++r) n = std::min(n, k * parts.parts[r].order() + r);

    std::vector<integer> out(n);
    for (std::size_t r = 0; r < k; ++r) {
        const auto& p = parts.parts[r];
        for (std::size_t i = 0; k * i + r < n; ++i) out[k * i + r] = p[i];
    }
    return truncated_series(std::move(out));
}

truncated_series reduce_mod(const truncated_series& a, std::uint64_t m) {
    if (m < 2) throw invalid_modulus("modulus must be >= 2");
    std::vector<integer> out(a.order());
    for (std::size_t i = 0; i < a.order(); ++i) {
        integer r = a[i] % m;
        if (r < 0) r += m;
        out[i] = std::move(r);
    }
    return truncated_series(std::move(out));
}

bool series_congruent(const truncated_series& a, const truncated_series& b, std::uint64_t m) {
    if (m < 2) throw invalid_modulus("modulus must be >= 2");
    const std::size_t n = std::min(a.order(), b.order());
    for (std::size_t i = 0; i < n; ++i)
        if ((a[i] - b[i]) % m != 0) return false;
    return true;
}

}  // namespace qcong
