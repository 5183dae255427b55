#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "diffquat/commands.hpp"
#include "diffquat/expr.hpp"
#include "test_helpers.hpp"

using namespace diffquat;

#ifndef TEST_DATA_DIR
#define TEST_DATA_DIR "tests/data"
#endif

namespace {
std::string data(const char* name) { return std::string(TEST_DATA_DIR) + "/" + name; }
} // namespace

TEST_CASE("parse_expr") {
    CHECK(parse_ratfunc("-1/(8*t)") == RatFunc(Poly(Rat(-1)), Poly::from_coeffs({Rat(0), Rat(8)})));
    CHECK(parse_ratfunc("t^2 - 1") ==
          RatFunc(Poly::from_coeffs({Rat(-1), Rat(0), Rat(1)})));
    CHECK(parse_ratfunc("2*t/(t^2+1)") ==
          RatFunc(Poly::from_coeffs({Rat(0), Rat(2)}), Poly::from_coeffs({Rat(1), Rat(0), Rat(1)})));
    CHECK(parse_ratfunc("-t^2") == -RatFunc(Poly::monomial(Rat(1), 2)));
    CHECK(parse_ratfunc("t^-1") == RatFunc(Poly(Rat(1)), Poly::var()));
    CHECK(parse_ratfunc("3/4") == RatFunc(Rat(3, 4)));

    SUBCASE("syntax errors carry the offset") {
        try {
            parse_ratfunc("1/(t");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.offset == 4);
        }
        CHECK_THROWS_AS(parse_ratfunc("t +"), ParseError);
        CHECK_THROWS_AS(parse_ratfunc("(1))("), ParseError);
        CHECK_THROWS_AS(parse_ratfunc("t ~ 2"), ParseError);
    }
    SUBCASE("division by the zero expression") {
        CHECK_THROWS_AS(parse_ratfunc("1/(t - t)"), MathError);
        CHECK_THROWS_AS(parse_ratfunc("1/0"), MathError);
    }
    SUBCASE("unknown symbols rejected in the base field") {
        CHECK_THROWS_AS(parse_ratfunc("x + 1"), MathError);
    }
    SUBCASE("round trip on random rational functions") {
        for (int i = 0; i < 200; ++i) {
            RatFunc f = testgen::random_ratfunc(4, 9);
            CHECK(parse_ratfunc(f.to_string()) == f);
        }
    }
    SUBCASE("tower element round trip") {
        auto tw = Tower::make_base(DiffBase{});
        auto adj = Tower::adjoin_step(
            tw, TowerStep::radical("theta", 8, TowerElem::from_ratfunc(tw, RatFunc::t())));
        TowerElem theta = adj.gen;
        TowerElem x = theta.inv() + TowerElem::from_ratfunc(adj.tower, RatFunc::t()) * theta.pow(3);
        CHECK(parse_tower_elem(x.to_string(), adj.tower).equals(x));
    }
}

TEST_CASE("load_problem") {
    SUBCASE("reference problem file") {
        ProblemSpec spec = load_problem(data("radical_tower.prob"));
        CHECK(spec.base.t_prime == RatFunc(Rat(1)));
        CHECK(spec.alpha == RatFunc(Rat(1)));
        CHECK(spec.beta == RatFunc::t());
        CHECK(spec.derivation.a1 == RatFunc(Poly(Rat(-1)), Poly::from_coeffs({Rat(0), Rat(8)})));
        CHECK(spec.derivation.a2.is_zero());
        CHECK(spec.hints.primitives.empty());
    }
    SUBCASE("hints are parsed") {
        ProblemSpec spec = load_problem(data("primitive_hint.prob"));
        REQUIRE(spec.hints.primitives.size() == 1);
        CHECK(spec.hints.primitives[0] == RatFunc(Poly(Rat(1)), Poly::var()));
    }
    SUBCASE("missing section") {
        CHECK_THROWS_WITH_AS(parse_problem_text("[field]\nt_prime = \"1\"\n"),
                             "missing section [algebra]", MathError);
    }
    SUBCASE("zero beta rejected") {
        std::string text = "[field]\nt_prime = \"1\"\n[algebra]\nalpha = \"1\"\nbeta = \"0\"\n"
                           "[derivation]\na1 = \"0\"\na2 = \"0\"\na3 = \"0\"\n";
        CHECK_THROWS_WITH_AS(parse_problem_text(text), "beta must be nonzero", MathError);
    }
    SUBCASE("unknown hint directive") {
        std::string text = "[field]\nt_prime = \"1\"\n[algebra]\nalpha = \"1\"\nbeta = \"t\"\n"
                           "[derivation]\na1 = \"0\"\na2 = \"0\"\na3 = \"0\"\n[hints]\nhint = \"frobnicate:1\"\n";
        CHECK_THROWS_AS(parse_problem_text(text), MathError);
    }
}

TEST_CASE("run_command split and verify") {
    CliFlags flags;
    SUBCASE("split on the radical-tower problem") {
        flags.out_path = "/tmp/diffquat_test_cert.json";
        CommandResult res = run_command("split", data("radical_tower.prob"), flags);
        CHECK(res.exit_code == 0);
        CHECK(res.output.find("verified: true") != std::string::npos);
        CHECK(res.output.find("theta^8 = t") != std::string::npos);

        // round trip through the emitted document
        std::ifstream in("/tmp/diffquat_test_cert.json");
        nlohmann::ordered_json doc;
        in >> doc;
        CHECK(doc["trdeg"] == 0);
        CHECK(doc["verified"] == true);
        CHECK(doc["det_F"] == "1");
        SplitCertificate cert = parse_certificate_json(doc);
        CHECK(certificates_equal(cert, parse_certificate_json(emit_certificate_json(cert))));

        CliFlags vf;
        CommandResult vres = run_command("verify", "/tmp/diffquat_test_cert.json", vf);
        CHECK(vres.exit_code == 0);
        CHECK(vres.output.find("PASS") != std::string::npos);
    }
    SUBCASE("verify detects tampering") {
        flags.out_path = "/tmp/diffquat_test_cert2.json";
        run_command("split", data("radical_tower.prob"), flags);
        std::ifstream in("/tmp/diffquat_test_cert2.json");
        nlohmann::ordered_json doc;
        in >> doc;
        doc["F"][0][0] = "theta^2";
        std::ofstream out("/tmp/diffquat_test_tampered.json");
        out << doc.dump(2);
        out.close();
        CommandResult res = run_command("verify", "/tmp/diffquat_test_tampered.json", CliFlags{});
        CHECK(res.exit_code == 1);
        CHECK(res.output.find("(1,1)") != std::string::npos);
    }
    SUBCASE("usage errors exit 2") {
        CHECK(run_command("frobnicate", data("radical_tower.prob"), flags).exit_code == 2);
        CHECK(run_command("split", "/nonexistent.prob", flags).exit_code == 2);
        CHECK(run_command("verify", "/nonexistent.json", flags).exit_code == 2);
    }
}

TEST_CASE("run_command riccati") {
    CliFlags flags;
    SUBCASE("equation with no rational solutions") {
        CommandResult res = run_command("riccati", data("no_rational_solutions.prob"), flags);
        CHECK(res.exit_code == 0);
        CHECK(res.output.find("equation: X' = X^2 - t") != std::string::npos);
        CHECK(res.output.find("rational solutions: []") != std::string::npos);
        CHECK(res.output.find("status: complete") != std::string::npos);
    }
    SUBCASE("equation with the zero solution") {
        CommandResult res = run_command("riccati", data("primitive_hint.prob"), flags);
        CHECK(res.output.find("equation: X' = (1/t)*X^2") != std::string::npos);
        CHECK(res.output.find("rational solutions: [0]") != std::string::npos);
    }
    SUBCASE("json output is deterministic") {
        flags.json = true;
        CommandResult a = run_command("riccati", data("radical_tower.prob"), flags);
        CommandResult b = run_command("riccati", data("radical_tower.prob"), flags);
        CHECK(a.output == b.output);
        CHECK(a.output.find("\"equation\": \"X' = (1/(4*t))*X\"") != std::string::npos);
    }
}

TEST_CASE("run_command standard and criteria") {
    CliFlags flags;
    SUBCASE("standard on the reference instance is negative") {
        CommandResult res = run_command("standard", data("radical_tower.prob"), flags);
        CHECK(res.exit_code == 1);
        CHECK(res.output.find("not-standard") != std::string::npos);
    }
    SUBCASE("criteria on a non-split instance") {
        std::string text = "[field]\nt_prime = \"1\"\n[algebra]\nalpha = \"t\"\nbeta = \"t\"\n"
                           "[derivation]\na1 = \"1/t\"\na2 = \"0\"\na3 = \"0\"\n";
        std::ofstream("/tmp/diffquat_nonsplit.prob") << text;
        CommandResult res = run_command("criteria", "/tmp/diffquat_nonsplit.prob", flags);
        CHECK(res.exit_code == 1);
        CHECK(res.output.find("not_split_by_algebraic") != std::string::npos);
        CHECK(res.output.find("condition (a)") != std::string::npos);
    }
    SUBCASE("criteria finds the finite-split witness") {
        std::string text = "[field]\nt_prime = \"1\"\n[algebra]\nalpha = \"t\"\nbeta = \"t\"\n"
                           "[derivation]\na1 = \"1/(t - t^2)\"\na2 = \"0\"\na3 = \"0\"\n";
        std::ofstream("/tmp/diffquat_finsplit.prob") << text;
        CommandResult res = run_command("criteria", "/tmp/diffquat_finsplit.prob", flags);
        CHECK(res.exit_code == 0);
        CHECK(res.output.find("finitely_split") != std::string::npos);
    }
}

TEST_CASE("split with hint emits the diagnostic note in JSON") {
    CliFlags flags;
    flags.json = true;
    CommandResult res = run_command("split", data("primitive_hint.prob"), flags);
    CHECK(res.exit_code == 0);
    nlohmann::ordered_json doc = nlohmann::ordered_json::parse(res.output);
    CHECK(doc["verified"] == true);
    CHECK(doc["trdeg"] == 1);
    bool saw = false;
    for (const auto& n : doc["notes"]) {
        if (n.get<std::string>().find("{0}") != std::string::npos) saw = true;
    }
    CHECK(saw);
}

TEST_CASE("byte-identical documents for identical inputs") {
    CliFlags flags;
    flags.json = true;
    CommandResult a = run_command("split", data("sqrt_pattern.prob"), flags);
    CommandResult b = run_command("split", data("sqrt_pattern.prob"), flags);
    CHECK(a.output == b.output);
}
