#include "qcong/oracle.hpp"

#include <functional>
#include <numeric>
#include <utility>
#include <vector>

namespace qcong {

void biregular_constraint::validate() const {
    if (ell < 2 || mu < 2)
        throw invalid_constraint("biregular moduli must both be >= 2, got (" +
                                 std::to_string(ell) + "," + std::to_string(mu) + ")");
    if (std::gcd(ell, mu) != 1)
        throw not_coprime("gcd(" + std::to_string(ell) + "," + std::to_string(mu) + ") != 1");
}

namespace {

/* Counts by part-size knapsack. Each admissible size s contributes the factor
 * (1 + q^s) / (1 - q^s) = 1 + 2q^s + 2q^{2s} + ...: one descending pass for
 * "the overlined copy of s is used at most once", then one ascending pass for
 * unrestricted further multiplicity. */
template <typename Allows>
std::vector<integer> overpartition_table(std::size_t order, Allows&& allows) {
    std::vector<integer> dp(order);
    dp[0] = 1;
    for (std::size_t s = 1; s < order; ++s) {
        if (!allows(s)) continue;
        for (std::size_t i = order - 1; i >= s; --i) dp[i] += dp[i - s];
        for (std::size_t i = s; i < order; ++i) dp[i] += dp[i - s];
    }
    return dp;
}

template <typename Allows>
integer enumerate(unsigned n, Allows&& allows) {
    std::function<integer(unsigned, unsigned)> rec = [&](unsigned remaining,
                                                         unsigned max_part) -> integer {
        if (remaining == 0) return 1;
        integer total = 0;
        for (unsigned s = std::min(remaining, max_part); s >= 1; --s) {
            if (!allows(s)) continue;
            for (unsigned used = s; used <= remaining; used += s)
                total += 2 * rec(remaining - used, s - 1);
        }
        return total;
    };
    return rec(n, n);
}

}  // namespace

integer count_overpartitions(unsigned n) {
    auto dp = overpartition_table(static_cast<std::size_t>(n) + 1, [](std::size_t) { return true; });
    return dp[n];
}

integer count_biregular(unsigned n, const biregular_constraint& c) {
    c.validate();
    auto dp = overpartition_table(static_cast<std::size_t>(n) + 1,
                                  [&](std::size_t s) { return c.allows(s); });
    return dp[n];
}

truncated_series oracle_series(const biregular_constraint& c, std::size_t order) {
    c.validate();
    if (order == 0) throw invalid_order("order must be >= 1");
    return truncated_series(overpartition_table(order, [&](std::size_t s) { return c.allows(s); }));
}

integer enumerate_overpartitions(unsigned n) {
    return enumerate(n, [](unsigned) { return true; });
}

integer enumerate_biregular(unsigned n, const biregular_constraint& c) {
    c.validate();
    return enumerate(n, [&](unsigned s) { return c.allows(s); });
}

}  // namespace qcong
