// qcong: expand eta quotients and theta series, check the identity registry,
// verify congruence claims against exact expansions, compare against the
// combinatorial oracle, enumerate quadratic-form residues and scan for new
// congruences. Text output is for people; JSON is the stable contract.
//
// Exit codes: 0 all checks passed, 1 a checked statement failed,
// 2 usage or input error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcong/claims_io.hpp"
#include "qcong/congruence.hpp"
#include "qcong/expr.hpp"
#include "qcong/identities.hpp"
#include "qcong/oracle.hpp"
#include "qcong/products.hpp"
#include "qcong/series.hpp"
#include "qcong/util.hpp"

namespace {

using nlohmann::json;
using namespace qcong;

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;

struct run_config {
    std::size_t order = 2000;
    std::string format = "text";
    unsigned parallelism = 0;  // 0 = auto
    std::uint64_t seed = 0;
    bool json() const { return format == "json"; }
};

json series_to_json(const truncated_series& s) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs()) coeffs.push_back(c.str());
    return json{{"order", s.order()}, {"coeffs", std::move(coeffs)}};
}

void print_series(const truncated_series& s, const run_config& cfg) {
    if (cfg.json()) {
        std::cout << series_to_json(s).dump() << "\n";
        return;
    }
    for (std::size_t i = 0; i < s.order(); ++i) std::cout << i << " " << s[i].str() << "\n";
}

std::pair<unsigned, unsigned> parse_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw error("pair must look like '2,3'");
    const long l = std::stol(text.substr(0, comma));
    const long m = std::stol(text.substr(comma + 1));
    if (l < 0 || m < 0) throw error("pair entries must be nonnegative");
    return {static_cast<unsigned>(l), static_cast<unsigned>(m)};
}

int cmd_expand(const std::string& expr_text, const run_config& cfg) {
    const auto series = expression::parse(expr_text).evaluate(cfg.order);
    print_series(series, cfg);
    return exit_ok;
}

json identity_report_to_json(const identity_report& rep) {
    json j{{"id", rep.id},
           {"N", rep.order},
           {"holds", rep.holds},
           {"first_bad_exponent", nullptr}};
    if (!rep.holds) {
        j["first_bad_exponent"] = *rep.first_bad_exponent;
        j["lhs_coeff"] = rep.lhs_coeff.str();
        j["rhs_coeff"] = rep.rhs_coeff.str();
    }
    return j;
}

void print_identity_report(const identity_report& rep, const run_config& cfg) {
    if (cfg.json()) {
        std::cout << identity_report_to_json(rep).dump() << "\n";
    } else if (rep.holds) {
        std::cout << "ok   " << rep.id << " (N=" << rep.order << ")\n";
    } else {
        std::cout << "FAIL " << rep.id << " at q^" << *rep.first_bad_exponent << ": lhs "
                  << rep.lhs_coeff.str() << ", rhs " << rep.rhs_coeff.str() << "\n";
    }
}

int cmd_identities_check(const std::optional<std::string>& id, const run_config& cfg) {
    std::vector<identity_report> reports;
    if (id) {
        reports.push_back(check_identity(*id, cfg.order));
    } else {
        reports = check_all(cfg.order, cfg.parallelism);
    }
    std::size_t failures = 0;
    for (const auto& rep : reports) {
        print_identity_report(rep, cfg);
        if (!rep.holds) ++failures;
    }
    if (!cfg.json())
        std::cout << reports.size() << " identities checked, " << failures << " failure"
                  << (failures == 1 ? "" : "s") << "\n";
    return failures == 0 ? exit_ok : exit_check_failed;
}

int cmd_identities_export() {
    json out = json::array();
    for (const auto& rec : registry()) {
        json j{{"id", rec.id},
               {"lhs", rec.lhs},
               {"rhs", rec.rhs},
               {"modulus", nullptr},
               {"anchor", rec.anchor}};
        if (rec.modulus) j["modulus"] = *rec.modulus;
        out.push_back(std::move(j));
    }
    std::cout << out.dump(2) << "\n";
    return exit_ok;
}

int cmd_verify(const std::optional<std::string>& claims_path, const run_config& cfg) {
    const std::vector<congruence_claim> claims =
        claims_path ? load_claims_file(*claims_path) : claim_catalog();

    const auto reports = verify_claims(claims, cfg.order, cfg.parallelism);
    std::size_t failures = 0;
    for (const auto& rep : reports) {
        if (!rep.holds) ++failures;
        if (cfg.json()) {
            std::cout << report_to_json(rep).dump() << "\n";
        } else {
            const auto& c = rep.claim;
            std::cout << (rep.holds ? "ok   " : "FAIL ") << "R(" << c.ell << "," << c.mu << ")("
                      << c.step << "n+" << c.offset << ") = 0 (mod " << c.modulus
                      << ") checked=" << rep.checked_count;
            if (rep.first_counterexample)
                std::cout << " counterexample n=" << rep.first_counterexample->n
                          << " coefficient=" << rep.first_counterexample->coefficient.str();
            std::cout << "\n";
        }
    }
    if (!cfg.json())
        std::cout << reports.size() << " claims checked to N=" << cfg.order << ", " << failures
                  << " failure" << (failures == 1 ? "" : "s") << "\n";
    return failures == 0 ? exit_ok : exit_check_failed;
}

int cmd_oracle_compare(const std::string& pair_text, const run_config& cfg) {
    const auto [l, m] = parse_pair(pair_text);
    const biregular_constraint c{l, m};
    const auto expected = oracle_series(c, cfg.order);
    const auto actual = gen_function(c, cfg.order);

    std::optional<std::size_t> first_bad;
    for (std::size_t i = 0; i < cfg.order; ++i)
        if (expected[i] != actual[i]) {
            first_bad = i;
            break;
        }

    if (cfg.json()) {
        json j{{"ell", l}, {"mu", m}, {"N", cfg.order}, {"identical", !first_bad.has_value()}};
        if (first_bad) {
            j["first_bad_exponent"] = *first_bad;
            j["oracle"] = expected[*first_bad].str();
            j["engine"] = actual[*first_bad].str();
        }
        std::cout << j.dump() << "\n";
    } else if (!first_bad) {
        std::cout << "identical to N=" << cfg.order << "\n";
    } else {
        std::cout << "MISMATCH at q^" << *first_bad << ": oracle " << expected[*first_bad].str()
                  << ", engine " << actual[*first_bad].str() << "\n";
    }
    return first_bad ? exit_check_failed : exit_ok;
}

int cmd_oracle_count(unsigned n, const std::optional<std::string>& pair_text,
                     const run_config& cfg) {
    integer value;
    if (pair_text) {
        const auto [l, m] = parse_pair(*pair_text);
        value = count_biregular(n, {l, m});
    } else {
        value = count_overpartitions(n);
    }
    if (cfg.json())
        std::cout << json{{"n", n}, {"count", value.str()}}.dump() << "\n";
    else
        std::cout << value.str() << "\n";
    return exit_ok;
}

int cmd_oracle_series(const std::string& pair_text, const run_config& cfg) {
    const auto [l, m] = parse_pair(pair_text);
    print_series(oracle_series({l, m}, cfg.order), cfg);
    return exit_ok;
}

std::set<std::uint64_t> parse_uint_set(const std::string& text) {
    std::set<std::uint64_t> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        out.insert(std::stoull(item));
    }
    if (out.empty()) throw error("expected a comma-separated list of integers");
    return out;
}

int cmd_residues(const std::string& forms_text, std::uint64_t modulus, unsigned from,
                 const std::optional<std::string>& targets_text, const run_config& cfg) {
    std::vector<quadratic_form> forms;
    std::istringstream in(forms_text);
    std::string one_form;
    while (std::getline(in, one_form, ';'))
        if (one_form.find_first_not_of(" \t") != std::string::npos)
            forms.push_back(parse_form(one_form, modulus, from));
    if (forms.empty()) throw error("no quadratic form given");

    std::optional<std::set<std::uint64_t>> targets;
    if (targets_text) targets = parse_uint_set(*targets_text);

    json out = json::array();
    bool all_missed = true;
    for (const auto& form : forms) {
        const auto residues = residues_of_form(form);
        json j{{"form", to_string(form)}, {"mod", modulus}, {"residues", residues}};
        if (targets) {
            std::set<std::uint64_t> hit;
            for (const auto t : *targets)
                if (residues.count(t)) hit.insert(t);
            if (!hit.empty()) all_missed = false;
            j["hit_targets"] = hit;
        }
        out.push_back(std::move(j));
        if (!cfg.json()) {
            std::cout << to_string(form) << " mod " << modulus << ": {";
            bool first = true;
            for (const auto r : residues) {
                if (!first) std::cout << ",";
                std::cout << r;
                first = false;
            }
            std::cout << "}\n";
        }
    }
    if (cfg.json()) std::cout << out.dump() << "\n";
    if (targets) {
        if (!cfg.json())
            std::cout << (all_missed ? "all targets missed" : "some target attained") << "\n";
        return all_missed ? exit_ok : exit_check_failed;
    }
    return exit_ok;
}

int cmd_scan(const std::string& pair_text, std::uint64_t max_step, const std::string& moduli_text,
             const run_config& cfg) {
    const auto [l, m] = parse_pair(pair_text);
    const auto moduli = parse_uint_set(moduli_text);
    const auto candidates = scan({l, m}, max_step, moduli, cfg.order);
    for (const auto& cand : candidates) {
        if (cfg.json()) {
            std::cout << json{{"ell", l},
                              {"mu", m},
                              {"A", cand.step},
                              {"B", cand.offset},
                              {"M", cand.modulus},
                              {"checked_count", cand.checked_count},
                              {"kind", "verified-to-order"},
                              {"N", cfg.order}}
                             .dump()
                      << "\n";
        } else {
            std::cout << "R(" << l << "," << m << ")(" << cand.step << "n+" << cand.offset
                      << ") = 0 (mod " << cand.modulus << ") checked=" << cand.checked_count
                      << "\n";
        }
    }
    if (!cfg.json()) std::cout << candidates.size() << " candidates\n";
    return exit_ok;
}

// Randomized self-checks of the series algebra, seeded for reproducibility.
int cmd_selftest(std::size_t cases, const run_config& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::cout << "seed " << cfg.seed << "\n";

    auto random_series = [&](std::size_t order) {
        std::uniform_int_distribution<int> coeff(-9, 9);
        std::vector<integer> c(order);
        for (auto& x : c) x = coeff(rng);
        return truncated_series(std::move(c));
    };

    std::size_t failures = 0;
    auto require = [&](bool ok, const char* what) {
        if (!ok) {
            ++failures;
            std::cout << "FAIL " << what << "\n";
        }
    };

    std::uniform_int_distribution<std::size_t> order_dist(9, 64);
    for (std::size_t i = 0; i < cases; ++i) {
        const std::size_t n = order_dist(rng);
        const auto a = random_series(n);
        const auto b = random_series(n);
        const auto c = random_series(n);
        require(add(a, b) == add(b, a), "add commutes");
        require(mul(a, b) == mul(b, a), "mul commutes");
        require(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)), "mul distributes");
        require(mul(mul(a, b), c) == mul(a, mul(b, c)), "mul associates");
        require(mul(a, truncated_series::one(n)) == a, "one is neutral");

        auto unit_coeffs = a.coeffs();
        unit_coeffs[0] = (i % 2 == 0) ? 1 : -1;
        const auto u = truncated_series(std::move(unit_coeffs));
        require(mul(u, invert(u)) == truncated_series::one(n), "invert is a right inverse");

        const std::size_t k = 2 + i % 8;
        if (n >= k) require(reassemble(dissect(a, k)) == a, "dissect/reassemble roundtrip");
    }
    std::cout << cases << " cases, " << failures << " failure" << (failures == 1 ? "" : "s")
              << "\n";
    return failures == 0 ? exit_ok : exit_check_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-series engine for overpartition congruence verification"};
    app.require_subcommand(1);

    run_config cfg;

    auto add_common = [&](CLI::App* sub, bool with_parallelism = false) {
        sub->add_option("--order,-N", cfg.order, "truncation order")
            ->envname("QCONG_ORDER")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
        if (with_parallelism)
            sub->add_option("--parallelism", cfg.parallelism, "worker threads, 0 = auto")
                ->capture_default_str();
    };

    // expand
    std::string expr_text;
    auto* expand = app.add_subcommand("expand", "expand an eta/theta expression");
    expand->add_option("expr", expr_text, "expression, e.g. \"f2 * f1^-2\" or \"phi(-q)\"")
        ->required();
    add_common(expand);

    // identities
    auto* identities = app.add_subcommand("identities", "identity registry");
    identities->require_subcommand(1);
    auto* id_check = identities->add_subcommand("check", "expand and compare every record");
    std::optional<std::string> only_id;
    id_check->add_option("--id", only_id, "check a single identity");
    add_common(id_check, true);
    auto* id_export = identities->add_subcommand("export", "print the registry as JSON");

    // verify
    auto* verify = app.add_subcommand("verify", "verify congruence claims");
    std::optional<std::string> claims_path;
    verify->add_option("--claims", claims_path, "claim file (JSON array or JSON lines)")
        ->check(CLI::ExistingFile);
    add_common(verify, true);

    // oracle
    auto* oracle = app.add_subcommand("oracle", "combinatorial counting oracle");
    oracle->require_subcommand(1);
    std::string pair_text = "2,3";
    auto* oracle_compare = oracle->add_subcommand("compare", "oracle vs engine expansion");
    oracle_compare->add_option("--pair", pair_text, "ell,mu")->required();
    add_common(oracle_compare);
    auto* oracle_count = oracle->add_subcommand("count", "count overpartitions of n");
    unsigned count_n = 0;
    std::optional<std::string> count_pair;
    oracle_count->add_option("n", count_n, "target integer")->required();
    oracle_count->add_option("--pair", count_pair, "restrict parts to the pair ell,mu");
    add_common(oracle_count);
    auto* oracle_series_cmd = oracle->add_subcommand("series", "print the oracle series");
    oracle_series_cmd->add_option("--pair", pair_text, "ell,mu")->required();
    add_common(oracle_series_cmd);

    // residues
    auto* residues = app.add_subcommand("residues", "residue set of quadratic forms");
    std::string forms_text;
    std::uint64_t res_mod = 12;
    unsigned res_from = 0;
    std::optional<std::string> targets_text;
    residues->add_option("form", forms_text, "e.g. \"3i^2+4j^2\"; ';' separates several forms")
        ->required();
    residues->add_option("--mod", res_mod, "modulus")->required()->check(CLI::Range(2, 1 << 20));
    residues->add_option("--from", res_from, "variables range over {0,1,...} or {1,2,...}")
        ->check(CLI::Range(0, 1))
        ->capture_default_str();
    residues->add_option("--targets", targets_text, "report which of these residues are attained");
    residues->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "search for congruence candidates");
    std::uint64_t max_step = 12;
    std::string moduli_text;
    scan_cmd->add_option("--pair", pair_text, "ell,mu")->required();
    scan_cmd->add_option("--maxA", max_step, "largest progression step")->required();
    scan_cmd->add_option("--moduli", moduli_text, "comma-separated moduli")->required();
    add_common(scan_cmd);

    // selftest
    auto* selftest = app.add_subcommand("selftest", "randomized algebra checks");
    std::size_t cases = 200;
    selftest->add_option("--cases", cases, "iterations")->capture_default_str();
    selftest->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return exit_usage;
    }

    try {
        if (expand->parsed()) return cmd_expand(expr_text, cfg);
        if (id_check->parsed()) return cmd_identities_check(only_id, cfg);
        if (id_export->parsed()) return cmd_identities_export();
        if (verify->parsed()) return cmd_verify(claims_path, cfg);
        if (oracle_compare->parsed()) return cmd_oracle_compare(pair_text, cfg);
        if (oracle_count->parsed()) return cmd_oracle_count(count_n, count_pair, cfg);
        if (oracle_series_cmd->parsed()) return cmd_oracle_series(pair_text, cfg);
        if (residues->parsed()) return cmd_residues(forms_text, res_mod, res_from, targets_text, cfg);
        if (scan_cmd->parsed()) return cmd_scan(pair_text, max_step, moduli_text, cfg);
        if (selftest->parsed()) return cmd_selftest(cases, cfg);
    } catch (const qcong::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
