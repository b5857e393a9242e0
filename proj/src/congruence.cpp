#include "qcong/congruence.hpp"

#include <algorithm>
#include <cctype>
#include <condition_variable>
#include <limits>
#include <utility>

#include "qcong/util.hpp"

namespace qcong {

std::string to_string(claim_status s) {
    switch (s) {
        case claim_status::theorem: return "theorem";
        case claim_status::implied: return "implied";
        case claim_status::conjectured_elementary: return "conjectured-elementary";
    }
    return {};
}

claim_status claim_status_from_string(const std::string& s) {
    if (s == "theorem") return claim_status::theorem;
    if (s == "implied") return claim_status::implied;
    if (s == "conjectured-elementary") return claim_status::conjectured_elementary;
    throw error("unknown claim status '" + s + "'");
}

void congruence_claim::validate() const {
    constraint().validate();
    if (step < 1) throw error("claim step must be >= 1");
    if (offset >= step)
        throw error("claim offset " + std::to_string(offset) + " must be smaller than step " +
                    std::to_string(step));
    if (modulus < 2) throw invalid_modulus("claim modulus must be >= 2");
}

const std::vector<congruence_claim>& claim_catalog() {
    static const std::vector<congruence_claim> table = {
        // Proved directly.
        {2, 3, 9, 6, 6, claim_status::theorem, "Thm 3.1"},
        {4, 3, 12, 7, 8, claim_status::theorem, "Thm 4.1"},
        {4, 3, 12, 11, 8, claim_status::theorem, "Thm 4.1"},
        {4, 3, 9, 3, 6, claim_status::theorem, "Thm 4.2"},
        {4, 3, 12, 11, 9, claim_status::theorem, "Thm 4.2"},
        {4, 9, 12, 3, 8, claim_status::theorem, "Thm 5.1"},
        {4, 9, 12, 7, 8, claim_status::theorem, "Thm 5.1"},
        {4, 9, 12, 11, 8, claim_status::theorem, "Thm 5.1"},
        {4, 9, 18, 12, 3, claim_status::theorem, "Thm 5.2"},
        {4, 9, 18, 15, 3, claim_status::theorem, "Thm 5.2"},
        {8, 27, 36, 15, 8, claim_status::theorem, "Thm 6.1"},
        {16, 81, 36, 33, 8, claim_status::theorem, "Thm 6.2"},
        // Composites that follow by combining with published results.
        {4, 3, 12, 7, 24, claim_status::implied, "concluding remarks"},
        {4, 3, 12, 11, 72, claim_status::implied, "concluding remarks"},
        {4, 9, 18, 12, 24, claim_status::implied, "concluding remarks"},
        {4, 9, 18, 15, 24, claim_status::implied, "concluding remarks"},
        // Stated without an elementary proof; checked numerically here.
        {8, 27, 36, 15, 3, claim_status::conjectured_elementary, "concluding remarks"},
        {16, 81, 36, 33, 6, claim_status::conjectured_elementary, "concluding remarks"},
        {8, 27, 36, 15, 24, claim_status::conjectured_elementary, "concluding remarks"},
        {16, 81, 36, 33, 48, claim_status::conjectured_elementary, "concluding remarks"},
    };
    return table;
}

product_spec biregular_spec(const biregular_constraint& c) {
    c.validate();
    const unsigned l = c.ell;
    const unsigned m = c.mu;
    if (2ULL * l * m > std::numeric_limits<unsigned>::max())
        throw error("pair (" + std::to_string(l) + "," + std::to_string(m) + ") is too large");
    return canonicalize({{{2, 1},
                          {l, 2},
                          {m, 2},
                          {2 * l * m, 1},
                          {1, -2},
                          {2 * l, -1},
                          {2 * m, -1},
                          {l * m, -2}}});
}

truncated_series gen_function(const biregular_constraint& c, std::size_t order) {
    return eta_quotient(biregular_spec(c), order);
}

struct expansion_cache::entry {
    std::mutex m;
    std::condition_variable ready;
    std::shared_ptr<const truncated_series> value;
    std::exception_ptr failure;
    bool done = false;
};

std::shared_ptr<const truncated_series> expansion_cache::get(const biregular_constraint& c,
                                                             std::size_t order) {
    c.validate();
    const std::tuple<unsigned, unsigned, std::size_t> key{c.ell, c.mu, order};

    std::shared_ptr<entry> e;
    bool owner = false;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            e = std::make_shared<entry>();
            entries_.emplace(key, e);
            owner = true;
        } else {
            e = it->second;
        }
    }

    if (owner) {
        std::shared_ptr<const truncated_series> value;
        std::exception_ptr failure;
        try {
            value = std::make_shared<const truncated_series>(gen_function(c, order));
        } catch (...) {
            failure = std::current_exception();
        }
        {
            std::lock_guard<std::mutex> lock(e->m);
            e->value = value;
            e->failure = failure;
            e->done = true;
        }
        e->ready.notify_all();
        if (failure) {
            // Do not pin a failed computation in the cache.
            std::lock_guard<std::mutex> lock(mutex_);
            entries_.erase(key);
            std::rethrow_exception(failure);
        }
        return value;
    }

    std::unique_lock<std::mutex> lock(e->m);
    e->ready.wait(lock, [&] { return e->done; });
    if (e->failure) std::rethrow_exception(e->failure);
    return e->value;
}

verification_report verify_claim(const congruence_claim& claim, std::size_t order,
                                 expansion_cache& cache) {
    claim.validate();
    if (order <= claim.offset)
        throw truncation_too_small("order " + std::to_string(order) +
                                   " does not reach the first progression element " +
                                   std::to_string(claim.offset));

    const auto series = cache.get(claim.constraint(), order);

    verification_report rep;
    rep.claim = claim;
    rep.order = order;
    rep.holds = true;
    // checked_count spans the whole progression below the truncation order,
    // counterexample or not.
    for (std::uint64_t n = 0;; ++n) {
        const std::uint64_t e = claim.step * n + claim.offset;
        if (e >= order) break;
        ++rep.checked_count;
        if (rep.holds && (*series)[static_cast<std::size_t>(e)] % claim.modulus != 0) {
            rep.holds = false;
            rep.first_counterexample = counterexample{n, (*series)[static_cast<std::size_t>(e)]};
        }
    }
    return rep;
}

verification_report verify_claim(const congruence_claim& claim, std::size_t order) {
    expansion_cache cache;
    return verify_claim(claim, order, cache);
}

std::vector<verification_report> verify_claims(const std::vector<congruence_claim>& claims,
                                               std::size_t order, unsigned parallelism) {
    expansion_cache cache;
    return parallel_map<verification_report>(claims.size(), parallelism, [&](std::size_t i) {
        return verify_claim(claims[i], order, cache);
    });
}

quadratic_form parse_form(const std::string& text, std::uint64_t modulus, unsigned min_value) {
    if (min_value > 1) throw error("variable ranges start at 0 or 1");
    quadratic_form form;
    form.modulus = modulus;

    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    while (true) {
        skip_ws();
        // coefficient (default 1), optional '*', variable letter, '^2'
        std::uint64_t coeff = 1;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            coeff = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                coeff = coeff * 10 + static_cast<std::uint64_t>(text[pos++] - '0');
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip_ws();
            }
        }
        if (coeff == 0) throw parse_error("term coefficient must be >= 1", pos);
        if (pos >= text.size() || !std::isalpha(static_cast<unsigned char>(text[pos])))
            throw parse_error("expected a variable name", pos);
        ++pos;
        skip_ws();
        if (pos + 1 >= text.size() || text[pos] != '^' || text[pos + 1] != '2')
            throw parse_error("expected '^2'", pos);
        pos += 2;
        form.terms.push_back({coeff, min_value});
        skip_ws();
        if (pos == text.size()) break;
        if (text[pos] != '+') throw parse_error("expected '+' between terms", pos);
        ++pos;
    }
    return form;
}

std::string to_string(const quadratic_form& form) {
    static const char* names = "ijklmnpr";
    std::string s;
    for (std::size_t t = 0; t < form.terms.size(); ++t) {
        if (t) s += "+";
        if (form.terms[t].coefficient != 1) s += std::to_string(form.terms[t].coefficient);
        s += names[t % 8];
        s += "^2";
    }
    return s;
}

std::set<std::uint64_t> residues_of_form(const quadratic_form& form) {
    if (form.modulus < 2) throw invalid_modulus("modulus must be >= 2");
    const std::uint64_t m = form.modulus;

    /* x^2 mod m is m-periodic in x, so one full period per variable exhausts
     * the attainable set; folding term by term keeps this linear in the
     * number of terms. */
    std::set<std::uint64_t> acc{0};
    for (const auto& term : form.terms) {
        std::set<std::uint64_t> squares;
        for (std::uint64_t x = term.min_value; x < term.min_value + m; ++x)
            squares.insert((term.coefficient % m) * ((x * x) % m) % m);
        std::set<std::uint64_t> next;
        for (const auto a : acc)
            for (const auto s : squares) next.insert((a + s) % m);
        acc = std::move(next);
    }
    return acc;
}

miss_report check_missed_residues(const std::vector<quadratic_form>& forms, std::uint64_t modulus,
                                  const std::set<std::uint64_t>& targets) {
    miss_report rep;
    rep.all_missed = true;
    for (const auto& form : forms) {
        if (form.modulus != modulus)
            throw error("all forms must share the modulus " + std::to_string(modulus));
        const auto attained = residues_of_form(form);
        std::set<std::uint64_t> hit;
        for (const auto t : targets)
            if (attained.count(t)) hit.insert(t);
        if (!hit.empty()) rep.all_missed = false;
        rep.hits.push_back(std::move(hit));
    }
    return rep;
}

truncated_series mod8_numerator(const biregular_constraint& c, std::size_t order) {
    c.validate();
    auto num = theta_expand(theta_spec::phi(1, 1), order);
    num = reduce_mod(mul(num, pow(theta_expand(theta_spec::phi(1, 2), order), 2)), 8);
    num = reduce_mod(mul(num, theta_expand(theta_spec::phi(-1, c.ell), order)), 8);
    num = reduce_mod(mul(num, theta_expand(theta_spec::phi(-1, c.mu), order)), 8);
    return num;
}

mod8_route_report mod8_route_check(const biregular_constraint& c, std::uint64_t step,
                                   const std::set<std::uint64_t>& targets, std::size_t order) {
    if (static_cast<std::uint64_t>(c.ell) * c.mu % step != 0)
        throw error("dissection step must divide ell*mu for the numerator check");
    const auto num = mod8_numerator(c, order);

    mod8_route_report rep;
    rep.holds = true;
    for (const auto r : targets) {
        for (std::uint64_t e = r; e < order; e += step) {
            if (num[static_cast<std::size_t>(e)] % 8 != 0) {
                rep.holds = false;
                rep.failures.emplace_back(r, e);
                break;
            }
        }
    }
    return rep;
}

std::vector<scan_candidate> scan(const biregular_constraint& c, std::uint64_t max_step,
                                 const std::set<std::uint64_t>& moduli, std::size_t order) {
    c.validate();
    if (max_step < 1) throw error("max step must be >= 1");
    for (const auto m : moduli)
        if (m < 2) throw invalid_modulus("scan moduli must all be >= 2");
    if (order < 10 * max_step)
        throw invalid_order("order must be at least 10 * max step to check 10 coefficients");

    const auto series = gen_function(c, order);

    std::vector<scan_candidate> passing;
    for (std::uint64_t step = 1; step <= max_step; ++step) {
        for (std::uint64_t offset = 0; offset < step; ++offset) {
            for (const auto modulus : moduli) {
                std::size_t checked = 0;
                bool ok = true;
                for (std::uint64_t e = offset; e < order; e += step) {
                    ++checked;
                    if (series[static_cast<std::size_t>(e)] % modulus != 0) {
                        ok = false;
                        break;
                    }
                }
                if (ok && checked >= 10) passing.push_back({step, offset, modulus, checked});
            }
        }
    }

    /* Drop candidates implied by a stronger passing one: divisor step,
     * congruent offset, multiple modulus. Implication is transitive, so what
     * survives are exactly the maximal candidates (smallest step, largest
     * modulus; equal-parameter families collapse to themselves). */
    auto implies = [](const scan_candidate& a, const scan_candidate& b) {
        return !(a == b) && b.step % a.step == 0 && (b.offset % a.step) == a.offset &&
               a.modulus % b.modulus == 0;
    };
    std::vector<scan_candidate> kept;
    for (const auto& cand : passing) {
        bool dominated = false;
        for (const auto& other : passing)
            if (implies(other, cand)) {
                dominated = true;
                break;
            }
        if (!dominated) kept.push_back(cand);
    }
    std::sort(kept.begin(), kept.end(), [](const scan_candidate& a, const scan_candidate& b) {
        return std::tie(a.step, a.offset, a.modulus) < std::tie(b.step, b.offset, b.modulus);
    });
    return kept;
}

}  // namespace qcong
