#include "qcong/expr.hpp"

#include <cctype>
#include <utility>
#include <vector>

namespace qcong {

struct expression::node {
    enum class kind { literal, q_power, eta, theta, sum, product, power, extract };

    kind k = kind::literal;
    integer literal;                // literal
    std::size_t exponent = 0;       // q_power: j in q^j; extract: base
    std::size_t part = 0;           // extract: residue class
    eta_factor eta;                 // eta
    theta_spec theta;               // theta
    std::vector<int> signs;         // sum: +1/-1 per child
    long long power = 1;            // power
    std::vector<std::shared_ptr<const node>> children;
    std::size_t begin = 0, end = 0;  // source span, for error messages
};

namespace {

using node = expression::node;
using node_ptr = std::shared_ptr<const node>;

class parser {
public:
    explicit parser(std::string_view text) : text_(text) {}

    node_ptr run() {
        auto e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool peek_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

    unsigned long long parse_uint() {
        skip_ws();
        if (!peek_digit()) fail("expected a number");
        unsigned long long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<unsigned long long>(text_[pos_] - '0');
            if (v > (1ULL << 40)) fail("number too large");
            ++pos_;
        }
        return v;
    }

    long long parse_int() {
        skip_ws();
        const bool neg = eat('-');
        const unsigned long long v = parse_uint();
        return neg ? -static_cast<long long>(v) : static_cast<long long>(v);
    }

    std::string parse_ident() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a name");
        return std::string(text_.substr(start, pos_ - start));
    }

    // ['-'] 'q' ['^' uint]
    std::pair<int, unsigned> parse_theta_arg() {
        const int sign = eat('-') ? -1 : 1;
        skip_ws();
        if (parse_ident() != "q") fail("theta argument must be of the form [-]q[^t]");
        unsigned long long t = 1;
        if (eat('^')) t = parse_uint();
        return {sign, static_cast<unsigned>(t)};
    }

    node_ptr parse_sum() {
        skip_ws();
        const std::size_t begin = pos_;
        auto n = std::make_shared<node>();
        n->k = node::kind::sum;
        int sign = eat('-') ? -1 : 1;
        n->signs.push_back(sign);
        n->children.push_back(parse_term());
        while (true) {
            if (eat('+'))
                sign = 1;
            else if (eat('-'))
                sign = -1;
            else
                break;
            n->signs.push_back(sign);
            n->children.push_back(parse_term());
        }
        if (n->children.size() == 1 && n->signs[0] == 1) return n->children[0];
        n->begin = begin;
        n->end = pos_;
        return n;
    }

    node_ptr parse_term() {
        skip_ws();
        const std::size_t begin = pos_;
        auto n = std::make_shared<node>();
        n->k = node::kind::product;
        n->children.push_back(parse_factor());
        while (eat('*')) n->children.push_back(parse_factor());
        if (n->children.size() == 1) return n->children[0];
        n->begin = begin;
        n->end = pos_;
        return n;
    }

    node_ptr parse_factor() {
        auto base = parse_primary();
        skip_ws();
        if (!eat('^')) return base;
        const long long k = parse_int();
        // f2^5 folds into the eta atom itself.
        if (base->k == node::kind::eta) {
            auto n = std::make_shared<node>(*base);
            n->eta.exponent = k;
            n->end = pos_;
            return n;
        }
        auto n = std::make_shared<node>();
        n->k = node::kind::power;
        n->power = k;
        n->children.push_back(std::move(base));
        n->begin = n->children[0]->begin;
        n->end = pos_;
        return n;
    }

    node_ptr parse_primary() {
        skip_ws();
        const std::size_t begin = pos_;
        auto n = std::make_shared<node>();
        n->begin = begin;

        if (peek_digit()) {
            n->k = node::kind::literal;
            n->literal = integer(parse_uint());
            n->end = pos_;
            return n;
        }
        if (eat('(')) {
            auto inner = parse_sum();
            expect(')');
            return inner;
        }

        const std::string name = parse_ident();
        if (name == "q") {
            n->k = node::kind::q_power;
            n->exponent = 1;
            if (eat('^')) n->exponent = static_cast<std::size_t>(parse_uint());
            n->end = pos_;
            return n;
        }
        if (name == "extract") {
            expect('(');
            n->k = node::kind::extract;
            n->children.push_back(parse_sum());
            expect(',');
            n->exponent = static_cast<std::size_t>(parse_uint());
            expect(',');
            n->part = static_cast<std::size_t>(parse_uint());
            expect(')');
            if (n->exponent == 0) fail("dissection base must be >= 1");
            if (n->part >= n->exponent) fail("residue class must be < base");
            n->end = pos_;
            return n;
        }
        if (name == "phi" || name == "psi" || name == "chi") {
            expect('(');
            auto [sign, t] = parse_theta_arg();
            expect(')');
            n->k = node::kind::theta;
            if (t == 0) fail("theta scale must be >= 1");
            if (name == "phi")
                n->theta = theta_spec::phi(sign, t);
            else if (name == "psi")
                n->theta = theta_spec::psi(sign, t);
            else
                n->theta = theta_spec::chi(sign, t);
            n->end = pos_;
            return n;
        }
        if (name == "f") {
            if (peek() == '(') {
                expect('(');
                auto [sa, ra] = parse_theta_arg();
                expect(',');
                auto [sb, rb] = parse_theta_arg();
                expect(')');
                n->k = node::kind::theta;
                n->theta = theta_spec::general(sa, ra, sb, rb);
                n->end = pos_;
                return n;
            }
            if (peek_digit()) {
                const unsigned long long scale = parse_uint();
                if (scale == 0) fail("eta scale must be >= 1");
                n->k = node::kind::eta;
                n->eta = {static_cast<unsigned>(scale), 1};
                n->end = pos_;
                return n;
            }
            fail("'f' must be followed by a scale or an argument list");
        }
        pos_ = begin;
        fail("unknown name '" + name + "'");
    }
};

class evaluator {
public:
    evaluator(const std::string& text, std::size_t order) : text_(text), order_(order) {}

    truncated_series eval(const node& n) const { return eval_at(n, order_); }

private:
    const std::string& text_;
    std::size_t order_;

    std::string slice(const node& n) const { return text_.substr(n.begin, n.end - n.begin); }

    truncated_series eval_at(const node& n, std::size_t order) const {
        switch (n.k) {
            case node::kind::literal:
                return truncated_series::monomial(n.literal, 0, order);
            case node::kind::q_power:
                return truncated_series::monomial(1, n.exponent, order);
            case node::kind::eta:
                return eta_power(n.eta.scale, n.eta.exponent, order);
            case node::kind::theta:
                return theta_expand(n.theta, order);
            case node::kind::sum: {
                truncated_series acc = truncated_series::zero(order);
                for (std::size_t i = 0; i < n.children.size(); ++i) {
                    auto t = eval_at(*n.children[i], order);
                    acc = n.signs[i] > 0 ? add(acc, t) : sub(acc, t);
                }
                return acc;
            }
            case node::kind::product:
                return eval_product(n, order);
            case node::kind::power: {
                auto base = eval_at(*n.children[0], order);
                try {
                    return pow(base, n.power);
                } catch (const not_invertible& e) {
                    throw not_invertible(std::string(e.what()) + " in '" + slice(*n.children[0]) +
                                         "'");
                }
            }
            case node::kind::extract: {
                /* Expanding the operand to k*order guarantees the requested
                 * class carries at least `order` coefficients. */
                auto inner = eval_at(*n.children[0], n.exponent * order);
                auto parts = dissect(inner, n.exponent);
                return truncate(parts.parts[n.part], order);
            }
        }
        throw error("unreachable expression node");
    }

    truncated_series eval_product(const node& n, std::size_t order) const {
        /* Adjacent eta atoms merge into one quotient so the negative block is
         * inverted once at the lowest usable order. */
        product_spec etas;
        std::vector<truncated_series> rest;
        for (const auto& child : n.children) {
            if (child->k == node::kind::eta)
                etas.factors.push_back(child->eta);
            else
                rest.push_back(eval_at(*child, order));
        }
        truncated_series acc = etas.factors.empty() ? truncated_series::one(order)
                                                    : eta_quotient(etas, order);
        for (auto& s : rest) acc = mul(acc, s);
        return acc;
    }
};

}  // namespace

expression expression::parse(std::string_view text) {
    parser p(text);
    auto root = p.run();
    return expression(std::move(root), std::make_shared<const std::string>(text));
}

truncated_series expression::evaluate(std::size_t order) const {
    if (order == 0) throw invalid_order("order must be >= 1");
    evaluator ev(*text_, order);
    return ev.eval(*root_);
}

}  // namespace qcong
