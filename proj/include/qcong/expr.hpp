#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "qcong/products.hpp"
#include "qcong/series.hpp"

namespace qcong {

/// A parsed series-builder expression. The grammar covers the eta/theta text
/// forms plus sums, integer scalars, powers of q, parenthesised subterms,
/// signed `^` exponents and extract(expr, k, r), which takes residue class r
/// of the k-dissection (with q^k -> q):
///
///   expr    := ['-'] term (('+' | '-') term)*
///   term    := factor ('*' factor)*
///   factor  := primary ['^' int]
///   primary := uint | 'q' ['^' uint] | 'f' uint | theta
///            | 'extract' '(' expr ',' uint ',' uint ')' | '(' expr ')'
///   theta   := ('phi'|'psi'|'chi') '(' arg ')' | 'f' '(' arg ',' arg ')'
///   arg     := ['-'] 'q' ['^' uint]
///
/// Whitespace is insignificant. Eta factors in one term are merged into a
/// single quotient before expansion; theta atoms always expand through their
/// summation form so that sum-versus-product identities stay two-sided.
class expression {
public:
    static expression parse(std::string_view text);

    /// Expands the expression mod q^order. Exact; throws not_invertible (with
    /// the offending subexpression quoted) when a negative power hits a
    /// non-unit constant term.
    truncated_series evaluate(std::size_t order) const;

    const std::string& text() const noexcept { return *text_; }

    struct node;

private:
    expression(std::shared_ptr<const node> root, std::shared_ptr<const std::string> text)
        : root_(std::move(root)), text_(std::move(text)) {}

    std::shared_ptr<const node> root_;
    std::shared_ptr<const std::string> text_;
};

}  // namespace qcong
