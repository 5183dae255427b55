#include "doctest.h"

#include "diffquat/odesolve.hpp"
#include "test_helpers.hpp"

using namespace diffquat;

namespace {

Poly P(std::initializer_list<long> coeffs) {
    std::vector<Rat> c;
    for (long v : coeffs) c.emplace_back(v);
    return Poly::from_coeffs(std::move(c));
}

const DiffBase b1{};
const RatFunc rf_t = RatFunc::t();
const RatFunc rf_1 = RatFunc(Rat(1));

RiccatiRatCoeffs eq3(RatFunc a0, RatFunc a1, RatFunc a2) {
    return {std::move(a0), std::move(a1), std::move(a2)};
}

} // namespace

TEST_CASE("logderiv_multiple") {
    SUBCASE("a = 1/(4t) -> (4, t)") {
        auto r = logderiv_multiple(b1, RatFunc(P({1}), P({0, 4})));
        REQUIRE(r.has_value());
        CHECK(r->n == 4);
        CHECK(r->f == rf_t);
    }
    SUBCASE("a = 2/t -> (1, t^2)") {
        auto r = logderiv_multiple(b1, RatFunc(P({2}), P({0, 1})));
        REQUIRE(r.has_value());
        CHECK(r->n == 1);
        CHECK(r->f == RatFunc(P({0, 0, 1})));
    }
    SUBCASE("a = 1 -> none") { CHECK(!logderiv_multiple(b1, rf_1).has_value()); }
    SUBCASE("a = -1/(8t) -> (8, 1/t)") {
        auto r = logderiv_multiple(b1, RatFunc(P({-1}), P({0, 8})));
        REQUIRE(r.has_value());
        CHECK(r->n == 8);
        CHECK(r->f == RatFunc(P({1}), P({0, 1})));
    }
    SUBCASE("a = 0 -> (1, 1)") {
        auto r = logderiv_multiple(b1, RatFunc());
        REQUIRE(r.has_value());
        CHECK(r->n == 1);
        CHECK(r->f == rf_1);
    }
    SUBCASE("double pole -> none") {
        CHECK(!logderiv_multiple(b1, RatFunc(P({1}), P({0, 0, 1}))).has_value());
    }
    SUBCASE("unsupported base derivation") {
        DiffBase q;
        q.t_prime = RatFunc(P({0, 0, 1}));
        CHECK_THROWS_AS(logderiv_multiple(q, rf_1), CapabilityError);
    }
    SUBCASE("minimality: no smaller multiple works") {
        auto r = logderiv_multiple(b1, RatFunc(P({-1}), P({0, 8})));
        REQUIRE(r.has_value());
        RatFunc a(P({-1}), P({0, 8}));
        for (int k = 1; k < r->n; ++k) {
            // k*a must fail to be a plain log-derivative: residues not integral
            auto ld = logderiv_residues(a * RatFunc(Rat(k)));
            bool integral = ld.polynomial_part.is_zero() && ld.reduced_remainder.is_zero();
            for (auto& [q, res] : ld.terms) integral = integral && res.is_integer();
            CHECK(!integral);
        }
    }
}

TEST_CASE("solve_linear_radical") {
    SUBCASE("a = -1/(8t): n = 8, theta^8 = 1/t") {
        auto r = solve_linear_radical(b1, RatFunc(P({-1}), P({0, 8})), 16);
        REQUIRE(r.has_value());
        CHECK(r->n == 8);
        CHECK(r->f == RatFunc(P({1}), P({0, 1})));
        // the radical tower built from (n, f) satisfies theta' = a theta
        auto tw = Tower::make_base(b1);
        auto rr = realize_radical(tw, r->n, r->f);
        TowerElem a_elem = TowerElem::from_ratfunc(rr.tower, RatFunc(P({-1}), P({0, 8})));
        CHECK(rr.elem.derive().equals(a_elem * rr.elem));
    }
    SUBCASE("a = 1/(2t): n = 2, theta^2 = t") {
        auto r = solve_linear_radical(b1, RatFunc(P({1}), P({0, 2})), 16);
        REQUIRE(r.has_value());
        CHECK(r->n == 2);
        CHECK(r->f == rf_t);
    }
    SUBCASE("a = t: none") { CHECK(!solve_linear_radical(b1, rf_t, 16).has_value()); }
    SUBCASE("n_max cutoff") {
        CHECK(!solve_linear_radical(b1, RatFunc(P({-1}), P({0, 8})), 4).has_value());
    }
}

TEST_CASE("linear_rational_solutions") {
    SUBCASE("X' = X + t has the unique solution -t-1") {
        auto ls = linear_rational_solutions(b1, rf_1, rf_t);
        REQUIRE(ls.particular.has_value());
        CHECK(*ls.particular == RatFunc(P({-1, -1})));
        CHECK(!ls.hom.has_value());
    }
    SUBCASE("X' = -X/t + 1 gives t/2 plus the c/t family") {
        auto ls = linear_rational_solutions(b1, RatFunc(P({-1}), P({0, 1})), rf_1);
        REQUIRE(ls.particular.has_value());
        CHECK(ls.particular->derivative() ==
              RatFunc(P({-1}), P({0, 1})) * *ls.particular + rf_1);
        REQUIRE(ls.hom.has_value());
        CHECK(*ls.hom == RatFunc(P({1}), P({0, 1})));
    }
    SUBCASE("X' = 1/t has no rational solution") {
        auto ls = linear_rational_solutions(b1, RatFunc(), RatFunc(P({1}), P({0, 1})));
        CHECK(!ls.particular.has_value());
    }
    SUBCASE("X' = 1/t^2 integrates to -1/t plus constants") {
        auto ls = linear_rational_solutions(b1, RatFunc(), RatFunc(P({1}), P({0, 0, 1})));
        REQUIRE(ls.particular.has_value());
        CHECK(*ls.particular == RatFunc(P({-1}), P({0, 1})));
        REQUIRE(ls.hom.has_value());
    }
    SUBCASE("verified on random instances when solutions exist") {
        for (int i = 0; i < 25; ++i) {
            RatFunc a1v = testgen::random_ratfunc(2, 3);
            RatFunc a0v = testgen::random_ratfunc(2, 3);
            auto ls = linear_rational_solutions(b1, a1v, a0v);
            if (ls.particular) CHECK(ls.particular->derivative() == a1v * *ls.particular + a0v);
            if (ls.hom) {
                CHECK(!ls.hom->is_zero());
                CHECK(ls.hom->derivative() == a1v * *ls.hom);
            }
        }
    }
}

TEST_CASE("riccati_rational_solutions") {
    SUBCASE("X' = X^2/t -> exactly {0}") {
        auto s = riccati_rational_solutions(b1, eq3(RatFunc(), RatFunc(), RatFunc(P({1}), P({0, 1}))));
        CHECK(s.status == SolveStatus::Complete);
        REQUIRE(s.isolated.size() == 1);
        CHECK(s.isolated[0].is_zero());
        CHECK(!s.has_family);
    }
    SUBCASE("X' = X^2 - t -> empty, definitively") {
        auto s = riccati_rational_solutions(b1, eq3(-rf_t, RatFunc(), rf_1));
        CHECK(s.status == SolveStatus::Complete);
        CHECK(s.isolated.empty());
        CHECK(!s.has_family);
    }
    SUBCASE("X' = -X^2 -> {0} plus the 1/(t+c) family") {
        auto s = riccati_rational_solutions(b1, eq3(RatFunc(), RatFunc(), -rf_1));
        CHECK(s.status == SolveStatus::Complete);
        REQUIRE(s.isolated.size() == 1);
        CHECK(s.isolated[0].is_zero());
        REQUIRE(s.has_family);
        CHECK(s.family_reps[0] == RatFunc(P({1}), P({0, 1})));
        CHECK(s.family_reps[1] == RatFunc(P({1}), P({1, 1})));
    }
    SUBCASE("X' = (X^2 - 1)/(4t) -> {-1, 1}") {
        RatFunc q4t(P({1}), P({0, 4}));
        auto s = riccati_rational_solutions(b1, eq3(-q4t, RatFunc(), q4t));
        CHECK(s.status == SolveStatus::Complete);
        REQUIRE(s.isolated.size() == 2);
        CHECK(s.isolated[0] == RatFunc(Rat(-1)));
        CHECK(s.isolated[1] == RatFunc(Rat(1)));
        CHECK(!s.has_family);
    }
    SUBCASE("linear route: X' = X/(4t) -> {0}") {
        auto s = riccati_rational_solutions(b1, eq3(RatFunc(), RatFunc(P({1}), P({0, 4})), RatFunc()));
        REQUIRE(s.isolated.size() == 1);
        CHECK(s.isolated[0].is_zero());
    }
    SUBCASE("all returned solutions verify by substitution") {
        for (int i = 0; i < 20; ++i) {
            RiccatiRatCoeffs eq{testgen::random_ratfunc(1, 2), testgen::random_ratfunc(1, 2),
                                testgen::random_ratfunc(1, 2)};
            auto s = riccati_rational_solutions(b1, eq, 2000);
            for (const RatFunc& x : s.all_rational()) CHECK(eq.is_solution(x));
        }
    }
    SUBCASE("further family members verify once three solutions are known") {
        // X' = -X^2 has solutions 0, 1/t, 1/(t+1); each further member of the
        // one-parameter family solves the equation
        RiccatiRatCoeffs eq = eq3(RatFunc(), RatFunc(), -rf_1);
        auto s = riccati_rational_solutions(b1, eq);
        REQUIRE(s.all_rational().size() >= 3);
        for (long c = 2; c <= 5; ++c)
            CHECK(eq.is_solution(RatFunc(P({1}), P({c, 1}))));
    }
    SUBCASE("known movable-pole family with an extra isolated solution") {
        // X' = 1 - X^2: solutions +-1 and tanh-like family; rational ones are +-1
        auto s = riccati_rational_solutions(b1, eq3(rf_1, RatFunc(), -rf_1));
        for (const RatFunc& x : s.all_rational())
            CHECK(x.derivative() == rf_1 - x * x);
        CHECK(std::find(s.isolated.begin(), s.isolated.end(), RatFunc(Rat(1))) != s.isolated.end());
        CHECK(std::find(s.isolated.begin(), s.isolated.end(), RatFunc(Rat(-1))) != s.isolated.end());
    }
}

TEST_CASE("riccati_pattern_solutions") {
    SUBCASE("beta = t, a = 1: +-sqrt(t) in a quadratic radical tower") {
        QuatAlgebra alg(rf_1, rf_t);
        auto tw = Tower::make_base(alg.base);
        DerivationSpec spec{RatFunc(), rf_1, RatFunc()};
        TowerElem xi = TowerElem::from_rat(tw, Rat(1));
        RiccatiEq eq = build_riccati(alg, spec, xi);
        auto pr = riccati_pattern_solutions(alg, spec, tw, eq);
        REQUIRE(pr.has_value());
        CHECK(pr->extended);
        CHECK(pr->tower->height() == 1);
        CHECK(pr->tower->step(0).kind == StepKind::Radical);
        CHECK(pr->tower->step(0).n == 2);
        CHECK(pr->plus.equals(-pr->minus));
        CHECK((pr->plus * pr->plus).equals(TowerElem::from_ratfunc(pr->tower, rf_t)));
    }
    SUBCASE("beta = t^2, a = 1: +-t rational") {
        QuatAlgebra alg(rf_1, RatFunc(P({0, 0, 1})));
        auto tw = Tower::make_base(alg.base);
        DerivationSpec spec{RatFunc(), rf_1, RatFunc()};
        TowerElem xi = TowerElem::from_rat(tw, Rat(1));
        RiccatiEq eq = build_riccati(alg, spec, xi);
        auto pr = riccati_pattern_solutions(alg, spec, tw, eq);
        REQUIRE(pr.has_value());
        CHECK(!pr->extended);
        CHECK(pr->plus.equals(TowerElem::from_ratfunc(tw, rf_t)));
    }
    SUBCASE("non-matching derivation returns none") {
        QuatAlgebra alg(rf_1, rf_t);
        auto tw = Tower::make_base(alg.base);
        DerivationSpec spec{rf_1, rf_1, RatFunc()};
        TowerElem xi = TowerElem::from_rat(tw, Rat(1));
        RiccatiEq eq = build_riccati(alg, spec, xi);
        CHECK(!riccati_pattern_solutions(alg, spec, tw, eq).has_value());
    }
    SUBCASE("theta along uv uses -beta") {
        QuatAlgebra alg(rf_t, rf_t);
        auto tw = Tower::make_base(alg.base);
        DerivationSpec spec{RatFunc(), RatFunc(), rf_1};
        auto xr = resolve_xi(alg, tw);
        RiccatiEq eq = build_riccati(alg, spec, xr.xi);
        auto pr = riccati_pattern_solutions(alg, spec, xr.tower, eq);
        REQUIRE(pr.has_value());
        CHECK((pr->plus * pr->plus).equals(TowerElem::from_ratfunc(pr->tower, -alg.beta)));
    }
}

TEST_CASE("zeropole_oracle") {
    DiffBase quad;
    quad.t_prime = RatFunc(P({0, 0, 1})); // t' = t^2

    SUBCASE("f = t^n: zero at 0 satisfies X' = X^2") {
        for (int n = 1; n <= 4; ++n) {
            auto rep = zeropole_oracle(quad, RatFunc(Poly::monomial(Rat(1), n)), n);
            CHECK(rep.all_pass);
            REQUIRE(rep.entries.size() == 1);
            CHECK(rep.entries[0].gamma == Rat(0));
            CHECK(rep.entries[0].order == n);
        }
    }
    SUBCASE("constant f passes vacuously") {
        auto rep = zeropole_oracle(quad, RatFunc(Rat(7)), 0);
        CHECK(rep.all_pass);
        CHECK(rep.entries.empty());
    }
    SUBCASE("precondition violations are rejected") {
        CHECK_THROWS_AS(zeropole_oracle(quad, RatFunc(P({1, 1})), 1), MathError);
        CHECK_THROWS_AS(zeropole_oracle(b1, rf_t, 1), CapabilityError);
    }
    SUBCASE("pole entries carry negative order") {
        auto rep = zeropole_oracle(quad, RatFunc(Poly(Rat(1)), Poly::monomial(Rat(1), 2)), -2);
        CHECK(rep.all_pass);
        REQUIRE(rep.entries.size() == 1);
        CHECK(rep.entries[0].order == -2);
    }
}
