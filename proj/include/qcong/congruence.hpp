#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qcong/oracle.hpp"
#include "qcong/products.hpp"
#include "qcong/series.hpp"

namespace qcong {

enum class claim_status { theorem, implied, conjectured_elementary };

std::string to_string(claim_status s);
claim_status claim_status_from_string(const std::string& s);

/// R(step * n + offset) = 0 (mod modulus) for every n >= 0, where R counts
/// the (ell, mu)-restricted overpartitions.
struct congruence_claim {
    unsigned ell = 2;
    unsigned mu = 3;
    std::uint64_t step = 1;     // A
    std::uint64_t offset = 0;   // B, with B < A
    std::uint64_t modulus = 2;  // M >= 2
    claim_status status = claim_status::theorem;
    std::string anchor;

    biregular_constraint constraint() const { return {ell, mu}; }
    void validate() const;

    friend bool operator==(const congruence_claim&, const congruence_claim&) = default;
};

/// The embedded claim catalog: every proved congruence, the composite
/// consequences, and the stated-but-not-elementarily-proved ones, each
/// labelled by status and anchor.
const std::vector<congruence_claim>& claim_catalog();

/// Generating-function spec for the restricted overpartition counts:
/// f2 fL^2 fM^2 f_{2LM} / (f1^2 f_{2L} f_{2M} f_{LM}^2).
product_spec biregular_spec(const biregular_constraint& c);

/// Expansion of biregular_spec(c) mod q^order.
truncated_series gen_function(const biregular_constraint& c, std::size_t order);

/// Shared expansion store keyed by (ell, mu, order) with single-flight
/// semantics: the first caller computes, concurrent callers for the same key
/// wait for that result.
class expansion_cache {
public:
    std::shared_ptr<const truncated_series> get(const biregular_constraint& c, std::size_t order);

private:
    struct entry;
    std::mutex mutex_;
    std::map<std::tuple<unsigned, unsigned, std::size_t>, std::shared_ptr<entry>> entries_;
};

struct counterexample {
    std::uint64_t n = 0;
    integer coefficient;
};

/// Outcome of checking one claim against a truncated expansion. Evidence, not
/// proof: serialised with kind = "verified-to-order".
struct verification_report {
    congruence_claim claim;
    std::size_t order = 0;
    std::size_t checked_count = 0;
    bool holds = false;
    std::optional<counterexample> first_counterexample;
};

/// Tests the coefficient at step*n + offset for every n with
/// step*n + offset < order. Throws truncation_too_small when order <= offset.
verification_report verify_claim(const congruence_claim& claim, std::size_t order,
                                 expansion_cache& cache);
verification_report verify_claim(const congruence_claim& claim, std::size_t order);

/// Verifies a batch against one shared cache; report order matches input
/// order regardless of parallelism.
std::vector<verification_report> verify_claims(const std::vector<congruence_claim>& claims,
                                               std::size_t order, unsigned parallelism = 1);

/// sum_i a_i x_i^2 with each x_i ranging over nonnegative integers
/// (min_value 0) or positive integers (min_value 1).
struct quadratic_form {
    struct term {
        std::uint64_t coefficient = 1;
        unsigned min_value = 0;
    };
    std::vector<term> terms;
    std::uint64_t modulus = 2;
};

/// Parses text like "3i^2+4j^2" (each term is its own variable); min_value is
/// applied to every variable.
quadratic_form parse_form(const std::string& text, std::uint64_t modulus, unsigned min_value);

std::string to_string(const quadratic_form& form);

/// The exact residue set of the form, by exhausting each variable over one
/// full period of the modulus.
std::set<std::uint64_t> residues_of_form(const quadratic_form& form);

struct miss_report {
    bool all_missed = false;
    /// For each input form, the attained residues intersected with the
    /// targets (empty when missed).
    std::vector<std::set<std::uint64_t>> hits;
};

/// True result iff no form attains any target residue mod `modulus`.
miss_report check_missed_residues(const std::vector<quadratic_form>& forms, std::uint64_t modulus,
                                  const std::set<std::uint64_t>& targets);

/// The numerator of the phi-quotient form of the generating function reduced
/// mod 8: phi(q) phi(q^2)^2 phi(-q^ell) phi(-q^mu). Multiplying by the
/// remaining 1/phi(-q^{ell*mu}) factor only shifts exponents by multiples of
/// ell*mu, so residue classes of step | ell*mu vanish in the full series iff
/// they vanish here.
truncated_series mod8_numerator(const biregular_constraint& c, std::size_t order);

struct mod8_route_report {
    bool holds = false;
    /// target residue -> first exponent whose coefficient is nonzero mod 8
    std::vector<std::pair<std::uint64_t, std::uint64_t>> failures;
};

/// Checks that every target residue class of the mod-8 numerator, dissected
/// at `step`, is identically zero mod 8 up to `order`.
mod8_route_report mod8_route_check(const biregular_constraint& c, std::uint64_t step,
                                   const std::set<std::uint64_t>& targets, std::size_t order);

struct scan_candidate {
    std::uint64_t step = 1;
    std::uint64_t offset = 0;
    std::uint64_t modulus = 2;
    std::size_t checked_count = 0;

    friend bool operator==(const scan_candidate&, const scan_candidate&) = default;
};

/// Searches every progression (step <= max_step, offset < step) and modulus
/// for congruences that hold on all checked coefficients (at least 10 per
/// candidate; requires order >= 10 * max_step). Candidates implied by a
/// stronger reported candidate (divisor step, congruent offset, multiple
/// modulus) are dropped, with output sorted by (step, offset, modulus).
std::vector<scan_candidate> scan(const biregular_constraint& c, std::uint64_t max_step,
                                 const std::set<std::uint64_t>& moduli, std::size_t order);

}  // namespace qcong
