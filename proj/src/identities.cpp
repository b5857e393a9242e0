#include "qcong/identities.hpp"

#include <utility>

#include "qcong/expr.hpp"
#include "qcong/util.hpp"

namespace qcong {

namespace {

std::vector<identity_record> build_registry() {
    std::vector<identity_record> r;
    auto rec = [&r](std::string id, std::string lhs, std::string rhs, std::string anchor) {
        r.push_back({std::move(id), std::move(lhs), std::move(rhs), std::nullopt,
                     std::move(anchor), std::nullopt});
    };
    auto rec_mod = [&r](std::string id, std::string lhs, std::string rhs, std::uint64_t m,
                        std::string anchor) {
        r.push_back(
            {std::move(id), std::move(lhs), std::move(rhs), m, std::move(anchor), std::nullopt});
    };
    auto rec_dis = [&r](std::string id, std::string lhs, std::string rhs, std::string anchor,
                        std::size_t base, std::vector<std::string> components) {
        r.push_back({std::move(id), std::move(lhs), std::move(rhs), std::nullopt,
                     std::move(anchor),
                     dissection_info{base, std::move(components)}});
    };

    // Product forms of the named theta functions.
    rec("phi_prod", "phi(q)", "f2^5 * f1^-2 * f4^-2", "Eq. (2.1)");
    rec("psi_prod", "psi(q)", "f2^2 * f1^-1", "Eq. (2.2)");
    rec("chi_prod", "chi(q)", "f2^2 * f1^-1 * f4^-1", "Eq. (2.4)");
    rec("chi_neg_prod", "chi(-q)", "f1 * f2^-1", "Eq. (2.5)");
    rec("phi_neg", "phi(-q)", "f1^2 * f2^-1", "Eq. (2.6)");
    rec("psi_neg", "psi(-q)", "f1 * f4 * f2^-1", "Eq. (2.7)");
    rec("phipsi", "phi(-q) * psi(q)", "f1 * f2", "Eq. (2.8)");

    // Two-parameter theta evaluations.
    rec("lemma21_a", "f(q,q^5)", "psi(-q^3) * chi(q)", "Lemma 2.1, first identity");
    rec("lemma21_b", "f(q,q^2)", "phi(-q^3) * chi(-q)^-1", "Lemma 2.1, second identity");

    // 2-dissections of f1^4 and 1/f1^4.
    rec_dis("dis_f1_4", "f1^4", "f4^10 * f2^-2 * f8^-4 - 4*q * f2^2 * f8^4 * f4^-2",
            "Lemma 2.2, 2-dissection of f1^4", 2,
            {"f2^10 * f1^-2 * f4^-4", "-4 * f1^2 * f4^4 * f2^-2"});
    rec_dis("dis_inv_f1_4", "f1^-4", "f4^14 * f2^-14 * f8^-4 + 4*q * f4^2 * f8^4 * f2^-10",
            "Lemma 2.2, 2-dissection of 1/f1^4", 2,
            {"f2^14 * f1^-14 * f4^-4", "4 * f2^2 * f4^4 * f1^-10"});

    // 2-dissections of f3/f1^3 and f3^3/f1.
    rec_dis("guad_a", "f3 * f1^-3",
            "f4^6 * f6^3 * f2^-9 * f12^-2 + 3*q * f4^2 * f6 * f12^2 * f2^-7",
            "Guadalupe Lemma 2.1, f3/f1^3", 2,
            {"f2^6 * f3^3 * f1^-9 * f6^-2", "3 * f2^2 * f3 * f6^2 * f1^-7"});
    rec_dis("guad_b", "f3^3 * f1^-1", "f4^3 * f6^2 * f2^-2 * f12^-1 + q * f12^3 * f4^-1",
            "Guadalupe Lemma 2.1, f3^3/f1", 2,
            {"f2^3 * f3^2 * f1^-2 * f6^-1", "f6^3 * f2^-1"});

    // 3-dissections of phi and psi.
    rec_dis("tri_phi", "phi(q)", "phi(q^9) + 2*q * f(q^3,q^15)", "3-dissection of phi", 3,
            {"phi(q^3)", "2 * f(q,q^5)", "0"});
    rec_dis("tri_psi", "psi(q)", "f(q^3,q^6) + q * psi(q^9)", "3-dissection of psi", 3,
            {"f(q,q^2)", "psi(q^3)", "0"});

    // Hirschhorn 3-dissections of f1^2/f2 and f2^2/f1.
    rec_dis("hirsch_a", "f1^2 * f2^-1", "f9^2 * f18^-1 - 2*q * f3 * f18^2 * f6^-1 * f9^-1",
            "Hirschhorn (14.3.2)", 3,
            {"f3^2 * f6^-1", "-2 * f1 * f6^2 * f2^-1 * f3^-1", "0"});
    rec_dis("hirsch_b", "f2^2 * f1^-1", "f6 * f9^2 * f3^-1 * f18^-1 + q * f18^2 * f9^-1",
            "Hirschhorn (14.3.3)", 3,
            {"f2 * f3^2 * f1^-1 * f6^-1", "f6^2 * f3^-1", "0"});

    // Toh's 3-dissection of f2/(f1 f4).
    rec_dis("toh", "f2 * f1^-1 * f4^-1",
            "f18^9 * f3^-2 * f9^-3 * f12^-2 * f36^-3"
            " + q * f6^2 * f18^3 * f3^-3 * f12^-3"
            " + q^2 * f6^4 * f9^3 * f36^3 * f3^-4 * f12^-4 * f18^-3",
            "Toh Lemma 2.1 (2.1c)", 3,
            {"f6^9 * f1^-2 * f3^-3 * f4^-2 * f12^-3", "f2^2 * f6^3 * f1^-3 * f4^-3",
             "f2^4 * f3^3 * f12^3 * f1^-4 * f4^-4 * f6^-3"});

    // Andrews-Hirschhorn-Sellers 3-dissection of f4/f1.
    rec_dis("ahs", "f4 * f1^-1",
            "f12 * f18^4 * f3^-3 * f36^-2"
            " + q * f6^2 * f9^3 * f36 * f3^-4 * f18^-2"
            " + 2*q^2 * f6 * f18 * f36 * f3^-3",
            "Andrews-Hirschhorn-Sellers Thm 3.1", 3,
            {"f4 * f6^4 * f1^-3 * f12^-2", "f2^2 * f3^3 * f12 * f1^-4 * f6^-2",
             "2 * f2 * f6 * f12 * f1^-3"});

    // 3-dissection of f2/f1^2.
    rec_dis("lem22", "f2 * f1^-2",
            "f6^4 * f9^6 * f3^-8 * f18^-3 + 2*q * f6^3 * f9^3 * f3^-7 + 4*q^2 * f6^2 * f18^3 * f3^-6",
            "Guadalupe Lemma 2.2", 3,
            {"f2^4 * f3^6 * f1^-8 * f6^-3", "2 * f2^3 * f3^3 * f1^-7",
             "4 * f2^2 * f6^3 * f1^-6"});

    /* The canonical instance of f_k^p = f_{pk} (mod p); the unit tests sweep
     * the full (p, k) grid directly. */
    rec_mod("frobenius_mod_p", "f1^3", "f3", 3, "f_k^p = f_{pk} (mod p)");

    /* 1/phi(-q) = phi(q) phi(q^2)^2 phi(q^4)^4 ... collapses to the first two
     * factors mod 8 because phi(x)^j = 1 (mod 8) for even j >= 4. */
    rec_mod("phi_inverse_mod8", "phi(-q)^-1", "phi(q) * phi(q^2)^2", 8, "phi(x)^j = 1 (mod 8) for even j >= 4");

    // Generating functions as phi quotients, one per pair used mod 8.
    rec("gf_4_3",
        "f2 * f4^2 * f3^2 * f24 * f1^-2 * f8^-1 * f6^-1 * f12^-2",
        "phi(-q^4) * phi(-q^3) * phi(-q)^-1 * phi(-q^12)^-1", "phi quotient form, pair (4,3)");
    rec("gf_4_9",
        "f2 * f4^2 * f9^2 * f72 * f1^-2 * f8^-1 * f18^-1 * f36^-2",
        "phi(-q^4) * phi(-q^9) * phi(-q)^-1 * phi(-q^36)^-1", "phi quotient form, pair (4,9)");
    rec("gf_8_27",
        "f2 * f8^2 * f27^2 * f432 * f1^-2 * f16^-1 * f54^-1 * f216^-2",
        "phi(-q^8) * phi(-q^27) * phi(-q)^-1 * phi(-q^216)^-1", "phi quotient form, pair (8,27)");
    rec("gf_16_81",
        "f2 * f16^2 * f81^2 * f2592 * f1^-2 * f32^-1 * f162^-1 * f1296^-2",
        "phi(-q^16) * phi(-q^81) * phi(-q)^-1 * phi(-q^1296)^-1", "phi quotient form, pair (16,81)");

    return r;
}

}  // namespace

const std::vector<identity_record>& registry() {
    static const std::vector<identity_record> table = build_registry();
    return table;
}

const identity_record& find_identity(std::string_view id) {
    for (const auto& rec : registry())
        if (rec.id == id) return rec;
    throw unknown_identity("no identity named '" + std::string(id) + "'");
}

namespace {

identity_report compare(std::string id, const truncated_series& lhs, const truncated_series& rhs,
                        std::optional<std::uint64_t> modulus, std::size_t order) {
    identity_report rep;
    rep.id = std::move(id);
    rep.order = order;
    rep.holds = true;
    const std::size_t n = std::min(lhs.order(), rhs.order());
    for (std::size_t i = 0; i < n; ++i) {
        const integer d = lhs[i] - rhs[i];
        const bool ok = modulus ? (d % *modulus == 0) : d.is_zero();
        if (!ok) {
            rep.holds = false;
            rep.first_bad_exponent = i;
            rep.lhs_coeff = lhs[i];
            rep.rhs_coeff = rhs[i];
            break;
        }
    }
    return rep;
}

}  // namespace

identity_report check_identity(const identity_record& record, std::size_t order) {
    const auto lhs = expression::parse(record.lhs).evaluate(order);
    const auto rhs = expression::parse(record.rhs).evaluate(order);
    return compare(record.id, lhs, rhs, record.modulus, order);
}

identity_report check_identity(std::string_view id, std::size_t order) {
    return check_identity(find_identity(id), order);
}

std::vector<identity_report> check_all(std::size_t order, unsigned parallelism) {
    const auto& table = registry();
    return parallel_map<identity_report>(table.size(), parallelism, [&](std::size_t i) {
        return check_identity(table[i], order);
    });
}

std::vector<identity_report> check_dissection(const identity_record& record, std::size_t order) {
    if (!record.dissection) throw error("identity '" + record.id + "' has no dissection form");
    const auto& info = *record.dissection;

    const auto lhs = expression::parse(record.lhs).evaluate(info.base * order);
    const auto parts = dissect(lhs, info.base);

    std::vector<identity_report> reports;
    reports.reserve(info.base);
    for (std::size_t r = 0; r < info.base; ++r) {
        const auto component = expression::parse(info.components[r]).evaluate(order);
        auto rep = compare(record.id + "[" + std::to_string(r) + "]",
                           truncate(parts.parts[r], order), component, record.modulus, order);
        reports.push_back(std::move(rep));
    }
    return reports;
}

}  // namespace qcong
