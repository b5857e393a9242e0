#pragma once

#include <cstddef>

#include "qcong/series.hpp"

namespace qcong {

/// Restriction to parts divisible by neither ell nor mu, with
/// gcd(ell, mu) = 1 and both at least 2.
struct biregular_constraint {
    unsigned ell = 2;
    unsigned mu = 3;

    /// True for the part size s (s >= 1).
    bool allows(unsigned long long s) const { return s % ell != 0 && s % mu != 0; }

    /// Throws invalid_constraint / not_coprime on a bad pair.
    void validate() const;

    friend bool operator==(const biregular_constraint&, const biregular_constraint&) = default;
};

/// Number of overpartitions of n: partitions in which the first occurrence of
/// each part size may be overlined, i.e. sum over partitions of
/// 2^{#distinct part sizes}. Counted by dynamic programming, never through
/// the series engine.
integer count_overpartitions(unsigned n);

/// Same count restricted to part sizes the constraint allows.
integer count_biregular(unsigned n, const biregular_constraint& c);

/// Coefficients 0..order-1 of the restricted overpartition counting sequence,
/// by the same dynamic programming; independent of eta_quotient by
/// construction.
truncated_series oracle_series(const biregular_constraint& c, std::size_t order);

/// Reference implementations that walk every partition explicitly and add
/// 2^{#distinct sizes}. Exponential; meant for n up to ~30 to validate the
/// dynamic programming on the overlap.
integer enumerate_overpartitions(unsigned n);
integer enumerate_biregular(unsigned n, const biregular_constraint& c);

}  // namespace qcong
