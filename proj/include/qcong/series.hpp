#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qcong/errors.hpp"

namespace qcong {

/// Exact arbitrary-precision integer; coefficients never wrap or round.
using integer = boost::multiprecision::cpp_int;

/// A formal power series in q with exact integer coefficients, known modulo
/// q^order(). Index i of coeffs() holds the coefficient of q^i. Immutable
/// after construction; all operations below are pure functions, so values can
/// be shared freely across threads.
class truncated_series {
public:
    /// Wraps a coefficient vector; the order is the vector length.
    explicit truncated_series(std::vector<integer> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw invalid_order("series needs at least one coefficient");
    }

    static truncated_series zero(std::size_t order) {
        if (order == 0) throw invalid_order("order must be >= 1");
        return truncated_series(std::vector<integer>(order));
    }

    static truncated_series one(std::size_t order) {
        auto s = truncated_series::zero(order);
        s.coeffs_[0] = 1;
        return s;
    }

    /// A monomial c * q^j, truncated at `order` (the term vanishes if j >= order).
    static truncated_series monomial(integer c, std::size_t j, std::size_t order) {
        auto s = truncated_series::zero(order);
        if (j < order) s.coeffs_[j] = std::move(c);
        return s;
    }

    std::size_t order() const noexcept { return coeffs_.size(); }
    const integer& operator[](std::size_t i) const { return coeffs_[i]; }
    const std::vector<integer>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const noexcept {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    friend bool operator==(const truncated_series& a, const truncated_series& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    std::vector<integer> coeffs_;
};

/// dissect() output: parts[r] collects the coefficients of q^{kn+r} as the
/// coefficient of q^n, i.e. the residue-class-r subseries with q^k -> q.
struct dissection_parts {
    std::size_t base = 0;
    std::vector<truncated_series> parts;
};

/// Builds a series from explicit coefficients; order = values.size().
truncated_series from_coeffs(std::vector<integer> values);

/// Coefficientwise sum/difference; result order = min of the operand orders.
truncated_series add(const truncated_series& a, const truncated_series& b);
truncated_series sub(const truncated_series& a, const truncated_series& b);

truncated_series negate(const truncated_series& a);
truncated_series scale(const integer& c, const truncated_series& a);

/// Cauchy product truncated at min(a.order, b.order). Schoolbook with
/// zero-coefficient skipping, which makes multiplication by sparse series
/// (theta series, Euler products) cost O(nnz * order) instead of O(order^2).
truncated_series mul(const truncated_series& a, const truncated_series& b);

/// Multiplicative inverse mod q^order. Requires a[0] in {+1, -1}.
truncated_series invert(const truncated_series& a);

/// a^k by square-and-multiply; k < 0 inverts first, k = 0 yields 1.
truncated_series pow(const truncated_series& a, long long k);

/// Drops coefficients at q^new_order and above. new_order must be in
/// [1, a.order()].
truncated_series truncate(const truncated_series& a, std::size_t new_order);

/// Splits a into k residue-class subseries. parts[r].coeffs[n] = a.coeffs[kn+r]
/// and parts[r].order = ceil((a.order - r) / k). Requires a.order >= k so that
/// every part carries at least one known coefficient.
dissection_parts dissect(const truncated_series& a, std::size_t k);

/// Inverse of dissect on the common truncation range: S.coeffs[kn+r] =
/// parts[r].coeffs[n], with order = min_r (k * parts[r].order + r).
truncated_series reassemble(const dissection_parts& parts);

/// Replaces every coefficient by its least nonnegative residue mod m (m >= 2).
truncated_series reduce_mod(const truncated_series& a, std::uint64_t m);

/// True iff every coefficient of a - b on the common range is divisible by m.
bool series_congruent(const truncated_series& a, const truncated_series& b, std::uint64_t m);

inline truncated_series operator+(const truncated_series& a, const truncated_series& b) {
    return add(a, b);
}
inline truncated_series operator-(const truncated_series& a, const truncated_series& b) {
    return sub(a, b);
}
inline truncated_series operator*(const truncated_series& a, const truncated_series& b) {
    return mul(a, b);
}
inline truncated_series operator-(const truncated_series& a) { return negate(a); }

}  // namespace qcong
