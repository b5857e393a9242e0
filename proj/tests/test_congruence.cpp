#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <thread>

#include "qcong/claims_io.hpp"
#include "qcong/congruence.hpp"

using namespace qcong;

namespace {

bool catalog_contains(unsigned ell, unsigned mu, std::uint64_t A, std::uint64_t B, std::uint64_t M,
                      claim_status status) {
    for (const auto& c : claim_catalog())
        if (c.ell == ell && c.mu == mu && c.step == A && c.offset == B && c.modulus == M &&
            c.status == status)
            return true;
    return false;
}

}  // namespace

TEST_CASE("claim catalog") {
    const auto& cat = claim_catalog();
    CHECK(cat.size() >= 17);
    for (const auto& c : cat) {
        CHECK(c.offset < c.step);
        CHECK(c.modulus >= 2);
        CHECK_FALSE(c.anchor.empty());
        CHECK_NOTHROW(c.validate());
    }
    CHECK(catalog_contains(2, 3, 9, 6, 6, claim_status::theorem));
    CHECK(catalog_contains(4, 3, 12, 7, 8, claim_status::theorem));
    CHECK(catalog_contains(4, 3, 9, 3, 6, claim_status::theorem));
    CHECK(catalog_contains(4, 3, 12, 11, 9, claim_status::theorem));
    CHECK(catalog_contains(4, 9, 12, 3, 8, claim_status::theorem));
    CHECK(catalog_contains(4, 9, 18, 15, 3, claim_status::theorem));
    CHECK(catalog_contains(8, 27, 36, 15, 8, claim_status::theorem));
    CHECK(catalog_contains(16, 81, 36, 33, 8, claim_status::theorem));
    CHECK(catalog_contains(4, 3, 12, 11, 72, claim_status::implied));
    CHECK(catalog_contains(16, 81, 36, 33, 48, claim_status::conjectured_elementary));
}

TEST_CASE("gen_function") {
    SUBCASE("(2,3) collapses to f2^3 f3^2 f12 / (f1^2 f4 f6^3)") {
        CHECK(biregular_spec({2, 3}).factors ==
              std::vector<eta_factor>{{1, -2}, {2, 3}, {3, 2}, {4, -1}, {6, -3}, {12, 1}});
    }
    SUBCASE("constant term is 1 for every pair") {
        for (const auto [l, m] : {std::pair{2u, 3u}, {4u, 3u}, {4u, 9u}, {8u, 27u}, {16u, 81u}})
            CHECK(gen_function({l, m}, 8)[0] == 1);
    }
    SUBCASE("not coprime") { CHECK_THROWS_AS(gen_function({2, 6}, 10), not_coprime); }
}

TEST_CASE("verify_claim") {
    SUBCASE("a theorem holds with the forced check count") {
        const auto rep = verify_claim({2, 3, 9, 6, 6, claim_status::theorem, ""}, 2000);
        CHECK(rep.holds);
        CHECK(rep.checked_count == 222);
        CHECK_FALSE(rep.first_counterexample.has_value());
    }
    SUBCASE("a false claim reports the first counterexample") {
        const auto rep = verify_claim({2, 3, 1, 0, 5, claim_status::theorem, ""}, 10);
        CHECK_FALSE(rep.holds);
        REQUIRE(rep.first_counterexample.has_value());
        CHECK(rep.first_counterexample->n == 0);
        CHECK(rep.first_counterexample->coefficient == 1);
        // the count covers the whole progression even past the counterexample
        CHECK(rep.checked_count == 10);
    }
    SUBCASE("truncation must reach the progression") {
        CHECK_THROWS_AS(verify_claim({2, 3, 9, 6, 6, claim_status::theorem, ""}, 5),
                        truncation_too_small);
        CHECK_THROWS_AS(verify_claim({2, 3, 9, 6, 6, claim_status::theorem, ""}, 6),
                        truncation_too_small);
        CHECK_NOTHROW(verify_claim({2, 3, 9, 6, 6, claim_status::theorem, ""}, 7));
    }
    SUBCASE("holding at N implies holding at smaller N") {
        const congruence_claim claim{4, 3, 12, 7, 8, claim_status::theorem, ""};
        const auto big = verify_claim(claim, 600);
        const auto small = verify_claim(claim, 150);
        CHECK(big.holds);
        CHECK(small.holds);
        CHECK(small.checked_count <= big.checked_count);
    }
    SUBCASE("checked_count formula") {
        for (const std::size_t order : {100, 333, 2000}) {
            const auto rep = verify_claim({4, 9, 18, 12, 3, claim_status::theorem, ""}, order);
            CHECK(rep.checked_count == (order - 1 - 12) / 18 + 1);
        }
    }
}

TEST_CASE("verify_claims batch is deterministic under parallelism") {
    const auto serial = verify_claims(claim_catalog(), 400, 1);
    const auto parallel = verify_claims(claim_catalog(), 400, 8);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].claim == parallel[i].claim);
        CHECK(serial[i].holds == parallel[i].holds);
        CHECK(serial[i].checked_count == parallel[i].checked_count);
        CHECK(serial[i].holds);
    }
}

TEST_CASE("expansion cache single flight") {
    expansion_cache cache;
    std::atomic<int> started{0};
    std::vector<std::thread> threads;
    std::vector<std::shared_ptr<const truncated_series>> results(8);
    for (int t = 0; t < 8; ++t)
        threads.emplace_back([&, t] {
            ++started;
            results[t] = cache.get({2, 3}, 300);
        });
    for (auto& t : threads) t.join();
    CHECK(started == 8);
    for (int t = 1; t < 8; ++t) {
        CHECK(results[t] == results[0]);  // same shared expansion
        CHECK(*results[t] == *results[0]);
    }
    CHECK_THROWS_AS(cache.get({2, 4}, 10), not_coprime);
}

TEST_CASE("residues_of_form") {
    SUBCASE("squares mod 12 and mod 36") {
        CHECK(residues_of_form({{{1, 0}}, 12}) == std::set<std::uint64_t>{0, 1, 4, 9});
        CHECK(residues_of_form({{{1, 0}}, 36}) ==
              std::set<std::uint64_t>{0, 1, 4, 9, 13, 16, 25, 28});
    }
    SUBCASE("range start does not change the residue set") {
        for (const std::uint64_t m : {12ULL, 36ULL}) {
            CHECK(residues_of_form({{{1, 0}}, m}) == residues_of_form({{{1, 1}}, m}));
            CHECK(residues_of_form({{{3, 0}, {4, 0}}, m}) ==
                  residues_of_form({{{3, 1}, {4, 1}}, m}));
        }
    }
    SUBCASE("3i^2+4j^2 misses 11 but attains 7 mod 12") {
        const auto r = residues_of_form({{{3, 1}, {4, 1}}, 12});
        CHECK(r == std::set<std::uint64_t>{0, 3, 4, 7});
        CHECK_FALSE(r.count(11));
        CHECK(r.count(7));
    }
    SUBCASE("one period is enough: brute force over several periods agrees") {
        const quadratic_form form{{{3, 1}, {4, 1}}, 12};
        std::set<std::uint64_t> brute;
        for (std::uint64_t i = 1; i <= 48; ++i)
            for (std::uint64_t j = 1; j <= 48; ++j) brute.insert((3 * i * i + 4 * j * j) % 12);
        CHECK(residues_of_form(form) == brute);
    }
    SUBCASE("parse_form") {
        const auto form = parse_form("3i^2+4j^2", 12, 1);
        CHECK(form.terms.size() == 2);
        CHECK(form.terms[0].coefficient == 3);
        CHECK(form.terms[1].coefficient == 4);
        CHECK(to_string(form) == "3i^2+4j^2");
        CHECK_THROWS_AS(parse_form("3i^2+", 12, 0), parse_error);
        CHECK_THROWS_AS(parse_form("i^3", 12, 0), parse_error);
        CHECK_THROWS_AS(residues_of_form({{{1, 0}}, 1}), invalid_modulus);
    }
}

TEST_CASE("check_missed_residues") {
    SUBCASE("empty form list is trivially missed") {
        CHECK(check_missed_residues({}, 12, {3, 7, 11}).all_missed);
    }
    SUBCASE("every exponent form in the (4,9) expansion misses {3,7,11} mod 12") {
        const std::vector<quadratic_form> forms{
            {{{1, 1}}, 12},         {{{4, 1}}, 12},         {{{9, 1}}, 12},
            {{{2, 1}}, 12},         {{{2, 1}, {2, 1}}, 12}, {{{1, 1}, {4, 1}}, 12},
            {{{4, 1}, {9, 1}}, 12}, {{{1, 1}, {9, 1}}, 12},
        };
        const auto rep = check_missed_residues(forms, 12, {3, 7, 11});
        CHECK(rep.all_missed);
        CHECK(rep.hits.size() == forms.size());
    }
    SUBCASE("the (4,3) forms attain 7 mod 12, so the report says so") {
        const std::vector<quadratic_form> forms{{{{3, 1}, {4, 1}}, 12}, {{{1, 1}, {3, 1}}, 12}};
        const auto rep = check_missed_residues(forms, 12, {7, 11});
        CHECK_FALSE(rep.all_missed);
        CHECK(rep.hits[0] == std::set<std::uint64_t>{7});
        CHECK(rep.hits[1] == std::set<std::uint64_t>{7});
    }
    SUBCASE("modulus mismatch is rejected") {
        CHECK_THROWS_AS(check_missed_residues({{{{1, 0}}, 36}}, 12, {3}), error);
    }
}

TEST_CASE("mod-8 numerator route") {
    SUBCASE("numerator equals the reduced product of the four theta factors") {
        const auto num = mod8_numerator({4, 3}, 120);
        auto direct = mul(theta_expand(theta_spec::phi(1, 1), 120),
                          pow(theta_expand(theta_spec::phi(1, 2), 120), 2));
        direct = mul(direct, theta_expand(theta_spec::phi(-1, 4), 120));
        direct = mul(direct, theta_expand(theta_spec::phi(-1, 3), 120));
        CHECK(num == reduce_mod(direct, 8));
    }
    SUBCASE("target residue classes vanish") {
        CHECK(mod8_route_check({4, 3}, 12, {7, 11}, 600).holds);
        CHECK(mod8_route_check({4, 9}, 12, {3, 7, 11}, 600).holds);
        CHECK(mod8_route_check({8, 27}, 36, {15}, 600).holds);
        CHECK(mod8_route_check({16, 81}, 36, {33}, 600).holds);
    }
    SUBCASE("a class that does not vanish is reported") {
        const auto rep = mod8_route_check({4, 3}, 12, {0}, 120);
        CHECK_FALSE(rep.holds);
        REQUIRE(rep.failures.size() == 1);
        CHECK(rep.failures[0].first == 0);
        CHECK(rep.failures[0].second == 0);  // constant term is 1
    }
    SUBCASE("step must divide ell*mu") {
        CHECK_THROWS_AS(mod8_route_check({4, 3}, 36, {15}, 60), error);
    }
}

TEST_CASE("scan") {
    SUBCASE("rediscovers the (2,3) theorem") {
        const auto cands = scan({2, 3}, 9, {2, 3, 6}, 2000);
        CHECK(std::count_if(cands.begin(), cands.end(), [](const scan_candidate& c) {
                  return c.step == 9 && c.offset == 6 && c.modulus == 6;
              }) == 1);
    }
    SUBCASE("(4,3) mod-8 theorems are reported verbatim") {
        const auto cands = scan({4, 3}, 12, {8}, 2000);
        for (const auto offset : {7ULL, 11ULL})
            CHECK(std::count_if(cands.begin(), cands.end(), [&](const scan_candidate& c) {
                      return c.step == 12 && c.offset == offset && c.modulus == 8;
                  }) == 1);
    }
    SUBCASE("every matching catalog claim is reported or dominated") {
        const auto implies_claim = [](const scan_candidate& cand, const congruence_claim& claim) {
            return claim.step % cand.step == 0 && claim.offset % cand.step == cand.offset &&
                   cand.modulus % claim.modulus == 0;
        };
        for (const auto& claim : claim_catalog()) {
            if (claim.step > 18 || claim.modulus > 9) continue;
            const auto cands =
                scan(claim.constraint(), claim.step, {claim.modulus}, 10 * claim.step + 200);
            bool covered = false;
            for (const auto& cand : cands) covered = covered || implies_claim(cand, claim);
            CHECK_MESSAGE(covered, claim.anchor);
        }
    }
    SUBCASE("candidates never include dominated duplicates") {
        const auto cands = scan({2, 3}, 9, {2, 3, 6}, 400);
        for (const auto& a : cands)
            for (const auto& b : cands) {
                if (a == b) continue;
                const bool a_implies_b = b.step % a.step == 0 &&
                                         (b.offset % a.step) == a.offset &&
                                         a.modulus % b.modulus == 0;
                CHECK_FALSE(a_implies_b);
            }
    }
    SUBCASE("at least ten coefficients per candidate") {
        const auto cands = scan({2, 3}, 12, {2}, 120);
        for (const auto& c : cands) CHECK(c.checked_count >= 10);
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(scan({2, 3}, 9, {1}, 2000), invalid_modulus);
        CHECK_THROWS_AS(scan({2, 3}, 9, {2}, 50), invalid_order);
        CHECK_THROWS_AS(scan({2, 4}, 9, {2}, 500), not_coprime);
    }
}

TEST_CASE("claim JSON round trip") {
    for (const auto& claim : claim_catalog()) {
        const auto j = claim_to_json(claim);
        CHECK(j.at("A").get<std::uint64_t>() == claim.step);
        const auto back = claim_from_json(j);
        CHECK(back == claim);
    }
}

TEST_CASE("claim parsing") {
    SUBCASE("array document") {
        const auto claims = parse_claims_text(
            R"([{"ell":2,"mu":3,"A":9,"B":6,"M":6,"status":"theorem","anchor":"Thm 3.1"}])");
        REQUIRE(claims.size() == 1);
        CHECK(claims[0].step == 9);
        CHECK(claims[0].status == claim_status::theorem);
    }
    SUBCASE("json lines with defaults") {
        const auto claims = parse_claims_text("{\"ell\":2,\"mu\":3,\"A\":9,\"B\":6,\"M\":6}\n"
                                              "{\"ell\":4,\"mu\":3,\"A\":12,\"B\":7,\"M\":8}\n");
        REQUIRE(claims.size() == 2);
        CHECK(claims[1].modulus == 8);
        CHECK(claims[0].status == claim_status::conjectured_elementary);
    }
    SUBCASE("line numbers on malformed input") {
        try {
            parse_claims_text("{\"ell\":2,\"mu\":3,\"A\":9,\"B\":6,\"M\":6}\n{oops\n");
            FAIL("expected claim_file_error");
        } catch (const claim_file_error& e) {
            CHECK(e.line == 2);
        }
    }
    SUBCASE("semantic validation") {
        CHECK_THROWS_AS(parse_claims_text(R"([{"ell":2,"mu":3,"A":9,"B":9,"M":6}])"),
                        claim_file_error);
        CHECK_THROWS_AS(parse_claims_text(R"([{"ell":2,"mu":4,"A":9,"B":6,"M":6}])"),
                        claim_file_error);
        CHECK_THROWS_AS(parse_claims_text(R"([{"ell":2,"mu":3,"A":9,"B":6}])"), claim_file_error);
        CHECK_THROWS_AS(parse_claims_text(""), claim_file_error);
    }
    SUBCASE("report serialisation shape") {
        const auto rep = verify_claim({2, 3, 1, 0, 5, claim_status::theorem, "x"}, 10);
        const auto j = report_to_json(rep);
        CHECK(j.at("kind") == "verified-to-order");
        CHECK(j.at("holds") == false);
        CHECK(j.at("first_counterexample").at("n") == 0);
        CHECK(j.at("first_counterexample").at("coefficient") == "1");
        CHECK(j.at("N") == 10);
    }
}
