#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct run_result {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI binary with stderr folded into stdout.
run_result run(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + std::string(QCONG_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    run_result result;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string("cli_test_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("expand") {
    const auto r = run("expand \"f2 * f1^-2\" --order 6");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0 1\n1 2\n2 4\n3 8\n4 14\n5 24\n");

    const auto phi = run("expand \"phi(-q)\" --order 5");
    CHECK(phi.exit_code == 0);
    CHECK(phi.out == "0 1\n1 -2\n2 0\n3 0\n4 2\n");

    const auto one = run("expand \"f1^0\" --order 3");
    CHECK(one.out == "0 1\n1 0\n2 0\n");

    const auto js = run("expand \"f2 * f1^-2\" --order 4 --format json");
    const auto doc = json::parse(js.out);
    CHECK(doc.at("order") == 4);
    CHECK(doc.at("coeffs") == json::array({"1", "2", "4", "8"}));

    const auto bad = run("expand \"f2 **\" --order 4");
    CHECK(bad.exit_code == 2);
    CHECK(bad.out.find("position") != std::string::npos);

    const auto noninv = run("expand \"(1 - f1^0)^-1\" --order 4");
    CHECK(noninv.exit_code == 2);
    CHECK(noninv.out.find("1 - f1^0") != std::string::npos);
}

TEST_CASE("identities") {
    const auto check = run("identities check --order 120");
    CHECK(check.exit_code == 0);
    CHECK(check.out.find("0 failures") != std::string::npos);

    const auto unknown = run("identities check --id no_such_identity --order 10");
    CHECK(unknown.exit_code == 2);
    CHECK(unknown.out.find("no_such_identity") != std::string::npos);

    const auto exported = run("identities export");
    CHECK(exported.exit_code == 0);
    const auto doc = json::parse(exported.out);
    CHECK(doc.is_array());
    CHECK(doc.size() >= 21);
    bool has_tri_psi = false;
    for (const auto& rec : doc) {
        CHECK(rec.contains("id"));
        CHECK(rec.contains("lhs"));
        CHECK(rec.contains("rhs"));
        CHECK(rec.contains("modulus"));
        CHECK(rec.contains("anchor"));
        has_tri_psi = has_tri_psi || rec.at("id") == "tri_psi";
    }
    CHECK(has_tri_psi);
}

TEST_CASE("verify") {
    const auto ok = run("verify --order 400 --format json");
    CHECK(ok.exit_code == 0);
    std::size_t lines = 0;
    std::istringstream in(ok.out);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++lines;
        const auto rep = json::parse(line);  // round-trips under the schema
        CHECK(rep.at("holds") == true);
        CHECK(rep.at("kind") == "verified-to-order");
        CHECK(rep.at("first_counterexample").is_null());
        CHECK(rep.at("claim").contains("ell"));
        CHECK(rep.at("claim").contains("A"));
    }
    CHECK(lines >= 17);

    SUBCASE("deterministic output across parallelism levels") {
        const auto p1 = run("verify --order 400 --format json --parallelism 1");
        const auto p8 = run("verify --order 400 --format json --parallelism 8");
        CHECK(p1.out == p8.out);
    }

    SUBCASE("failing claim file") {
        const auto path = write_temp("bad_claim.json", R"([{"ell":2,"mu":3,"A":1,"B":0,"M":5}])");
        const auto r = run("verify --claims " + path + " --order 10 --format json");
        CHECK(r.exit_code == 1);
        const auto rep = json::parse(r.out);
        CHECK(rep.at("holds") == false);
        CHECK(rep.at("first_counterexample").at("n") == 0);
        CHECK(rep.at("first_counterexample").at("coefficient") == "1");
        std::remove(path.c_str());
    }

    SUBCASE("truncation too small is a usage error") {
        const auto r = run("verify --order 5");
        CHECK(r.exit_code == 2);
    }

    SUBCASE("malformed claim file names the line") {
        const auto path = write_temp("malformed.json", "{\"ell\":2,\n");
        const auto r = run("verify --claims " + path);
        CHECK(r.exit_code == 2);
        CHECK(r.out.find("line") != std::string::npos);
        std::remove(path.c_str());
    }
}

TEST_CASE("oracle") {
    CHECK(run("oracle compare --pair 2,3 --order 60").out == "identical to N=60\n");
    CHECK(run("oracle compare --pair 4,9 --order 60").exit_code == 0);

    const auto bad = run("oracle compare --pair 2,4 --order 20");
    CHECK(bad.exit_code == 2);
    CHECK(bad.out.find("gcd") != std::string::npos);

    CHECK(run("oracle count 3").out == "8\n");
    CHECK(run("oracle count 6 --pair 2,3").out == "6\n");
    const auto series = run("oracle series --pair 2,3 --order 4");
    CHECK(series.out == "0 1\n1 2\n2 2\n3 2\n");
}

TEST_CASE("residues") {
    const auto squares = run("residues \"i^2\" --mod 36");
    CHECK(squares.exit_code == 0);
    CHECK(squares.out.find("{0,1,4,9,13,16,25,28}") != std::string::npos);

    const auto missed = run("residues \"3i^2+4j^2\" --mod 12 --from 1 --targets 7,11");
    CHECK(missed.exit_code == 1);  // 7 is attained
    const auto missed2 = run("residues \"3i^2+4j^2\" --mod 12 --from 1 --targets 11");
    CHECK(missed2.exit_code == 0);
    CHECK(missed2.out.find("all targets missed") != std::string::npos);
}

TEST_CASE("scan") {
    const auto r = run("scan --pair 2,3 --maxA 9 --moduli 2,3,6 --order 2000");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("R(2,3)(9n+6) = 0 (mod 6)") != std::string::npos);

    const auto bad = run("scan --pair 2,3 --maxA 9 --moduli 1 --order 2000");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("selftest prints its seed") {
    const auto r = run("selftest --cases 25 --seed 7");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("seed 7") != std::string::npos);
    CHECK(r.out.find("0 failures") != std::string::npos);
}

TEST_CASE("QCONG_ORDER sets the default order but never beats a flag") {
    const auto from_env = run("expand \"f1^0\" ", "QCONG_ORDER=4 ");
    CHECK(from_env.out == "0 1\n1 0\n2 0\n3 0\n");
    const auto flag_wins = run("expand \"f1^0\" --order 2", "QCONG_ORDER=4 ");
    CHECK(flag_wins.out == "0 1\n1 0\n");
}

TEST_CASE("usage errors") {
    CHECK(run("").exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("expand").exit_code == 2);
    const auto help = run("--help");
    CHECK(help.exit_code == 0);
}
