#include "doctest.h"

#include "diffquat/decomp.hpp"
#include "diffquat/linalg.hpp"
#include "diffquat/ratfunc.hpp"
#include "test_helpers.hpp"

using namespace diffquat;

namespace {
Poly P(std::initializer_list<long> coeffs) {
    std::vector<Rat> c;
    for (long v : coeffs) c.emplace_back(v);
    return Poly::from_coeffs(std::move(c));
}
const Poly t = Poly::var();
} // namespace

TEST_CASE("rat basics") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-2, -4) == Rat(1, 2));
    CHECK(Rat(2, -4) == Rat(-1, 2));
    CHECK(Rat(0, 7).to_string() == "0");
    CHECK(Rat(-3, 4).to_string() == "-3/4");
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(1, 3).pow(-2) == Rat(9));
    CHECK_THROWS_AS(Rat(1, 2) / Rat(0), MathError);
    CHECK_THROWS_AS(Rat(1, 0), MathError);
    CHECK(Rat::from_string("-7/2") == Rat(-7, 2));
}

TEST_CASE("ratfunc_normalize") {
    SUBCASE("cancellation") {
        RatFunc f(P({-1, 0, 1}), P({-1, 1})); // (t^2-1)/(t-1)
        CHECK(f == RatFunc(P({1, 1})));
    }
    SUBCASE("content normalization") {
        RatFunc f(P({0, 2}), P({4}));
        CHECK(f == RatFunc(Poly::from_coeffs({Rat(0), Rat(1, 2)})));
        CHECK(f.den().is_one());
    }
    SUBCASE("zero numerator") {
        RatFunc f(Poly(), t.pow(3));
        CHECK(f.is_zero());
        CHECK(f.den().is_one());
    }
    SUBCASE("zero denominator rejected") {
        CHECK_THROWS_AS(RatFunc(t, Poly()), MathError);
    }
    SUBCASE("idempotent and representative independent") {
        for (int i = 0; i < 50; ++i) {
            RatFunc f = testgen::random_ratfunc();
            Poly scale = testgen::random_nonzero_poly(2);
            RatFunc g(f.num() * scale, f.den() * scale);
            CHECK(f == g);
            CHECK(RatFunc(f.num(), f.den()) == f);
        }
    }
}

TEST_CASE("ratfunc arithmetic") {
    RatFunc inv_t(P({1}), t);
    CHECK(inv_t + inv_t == RatFunc(P({2}), t));
    RatFunc a(P({1}), P({-1, 1}));
    CHECK(a * RatFunc(P({-1, 1})) == RatFunc(Rat(1)));
    CHECK_THROWS_AS(inv_t / RatFunc(), MathError);

    SUBCASE("field axioms on random pairs") {
        for (int i = 0; i < 200; ++i) {
            RatFunc x = testgen::random_ratfunc(2);
            RatFunc y = testgen::random_ratfunc(2);
            RatFunc z = testgen::random_ratfunc(1);
            CHECK(x + y == y + x);
            CHECK(x * y == y * x);
            CHECK((x + y) + z == x + (y + z));
            CHECK(x * (y + z) == x * y + x * z);
            if (!x.is_zero()) CHECK(x * x.inv() == RatFunc(Rat(1)));
        }
    }
}

TEST_CASE("poly_gcd") {
    CHECK(poly_gcd(P({-1, 0, 1}), P({1, -2, 1})) == P({-1, 1}));
    CHECK(poly_gcd(t, P({1})) == P({1}));
    CHECK(poly_gcd(Poly(), P({3, 3})) == P({1, 1}));
    CHECK(poly_gcd(Poly(), Poly()).is_zero());
    for (int i = 0; i < 40; ++i) {
        Poly a = testgen::random_poly(4);
        Poly b = testgen::random_poly(4);
        Poly g = poly_gcd(a, b);
        if (g.is_zero()) {
            CHECK(a.is_zero());
            CHECK(b.is_zero());
            continue;
        }
        CHECK(divmod(a, g).second.is_zero());
        CHECK(divmod(b, g).second.is_zero());
    }
}

TEST_CASE("squarefree_factor") {
    SUBCASE("t^3 - t^2") {
        auto sf = squarefree_factor(P({0, 0, -1, 1}));
        CHECK(sf.content == Rat(1));
        REQUIRE(sf.factors.size() == 2);
        CHECK(sf.reconstruct() == P({0, 0, -1, 1}));
        bool saw_t2 = false, saw_tm1 = false;
        for (auto& [f, m] : sf.factors) {
            if (f == t && m == 2) saw_t2 = true;
            if (f == P({-1, 1}) && m == 1) saw_tm1 = true;
        }
        CHECK(saw_t2);
        CHECK(saw_tm1);
    }
    SUBCASE("irreducible stays whole") {
        auto sf = squarefree_factor(P({1, 0, 1}));
        REQUIRE(sf.factors.size() == 1);
        CHECK(sf.factors[0].first == P({1, 0, 1}));
        CHECK(sf.factors[0].second == 1);
    }
    SUBCASE("content") {
        auto sf = squarefree_factor(P({0, 0, 4}));
        CHECK(sf.content == Rat(4));
        REQUIRE(sf.factors.size() == 1);
        CHECK(sf.factors[0] == std::make_pair(t, 2));
    }
    SUBCASE("zero rejected") { CHECK_THROWS_AS(squarefree_factor(Poly()), MathError); }
    SUBCASE("reconstruction on randoms") {
        for (int i = 0; i < 30; ++i) {
            Poly p = testgen::random_nonzero_poly(3) * testgen::random_nonzero_poly(2).pow(2);
            CHECK(squarefree_factor(p).reconstruct() == p);
        }
    }
}

TEST_CASE("partial_fractions") {
    SUBCASE("1/(t^2-t)") {
        auto pf = partial_fractions(RatFunc(P({1}), P({0, -1, 1})));
        CHECK(pf.polynomial_part.is_zero());
        // -1/t + 1/(t-1)
        REQUIRE(pf.blocks.size() == 2);
        CHECK(pf.reconstruct() == RatFunc(P({1}), P({0, -1, 1})));
        for (auto& blk : pf.blocks) {
            REQUIRE(blk.digits.size() == 1);
            if (blk.factor == t) CHECK(blk.digits[0] == P({-1}));
            else {
                CHECK(blk.factor == P({-1, 1}));
                CHECK(blk.digits[0] == P({1}));
            }
        }
    }
    SUBCASE("(t^2+1)/t") {
        auto pf = partial_fractions(RatFunc(P({1, 0, 1}), t));
        CHECK(pf.polynomial_part == t);
        REQUIRE(pf.blocks.size() == 1);
        CHECK(pf.blocks[0].digits[0] == P({1}));
    }
    SUBCASE("1/t^2") {
        auto pf = partial_fractions(RatFunc(P({1}), t.pow(2)));
        CHECK(pf.polynomial_part.is_zero());
        REQUIRE(pf.blocks.size() == 1);
        CHECK(pf.blocks[0].factor == t);
        CHECK(pf.blocks[0].mult == 2);
        CHECK(pf.blocks[0].digits[0].is_zero());
        CHECK(pf.blocks[0].digits[1] == P({1}));
    }
    SUBCASE("re-sums exactly on randoms") {
        for (int i = 0; i < 60; ++i) {
            RatFunc f = testgen::random_ratfunc(4);
            CHECK(partial_fractions(f).reconstruct() == f);
        }
    }
}

TEST_CASE("logderiv_residues") {
    SUBCASE("single simple pole") {
        auto ld = logderiv_residues(RatFunc(P({1}), P({0, 4})));
        CHECK(ld.polynomial_part.is_zero());
        REQUIRE(ld.terms.size() == 1);
        CHECK(ld.terms[0].first == t);
        CHECK(ld.terms[0].second == Rat(1, 4));
        CHECK(ld.reduced_remainder.is_zero());
    }
    SUBCASE("irreducible quadratic with residue 1") {
        auto ld = logderiv_residues(RatFunc(P({0, 2}), P({1, 0, 1})));
        REQUIRE(ld.terms.size() == 1);
        CHECK(ld.terms[0].first == P({1, 0, 1}));
        CHECK(ld.terms[0].second == Rat(1));
        CHECK(ld.reduced_remainder.is_zero());
    }
    SUBCASE("double pole is not a log-derivative") {
        auto ld = logderiv_residues(RatFunc(P({1}), t.pow(2)));
        CHECK(ld.terms.empty());
        CHECK(ld.reduced_remainder == RatFunc(P({1}), t.pow(2)));
    }
    SUBCASE("mixed orders keep the simple part") {
        // 1/t + 1/t^2
        RatFunc a = RatFunc(P({1}), t) + RatFunc(P({1}), t.pow(2));
        auto ld = logderiv_residues(a);
        REQUIRE(ld.terms.size() == 1);
        CHECK(ld.terms[0] == std::make_pair(t, Rat(1)));
        CHECK(ld.reduced_remainder == RatFunc(P({1}), t.pow(2)));
    }
    SUBCASE("distinct residues across an irrational block") {
        // 2t/(t^2-2) + 4t/(t^2-3): residues 1 and 2 on the two quadratics
        RatFunc a = RatFunc(P({0, 2}), P({-2, 0, 1})) + RatFunc(P({0, 4}), P({-3, 0, 1}));
        auto ld = logderiv_residues(a);
        REQUIRE(ld.terms.size() == 2);
        CHECK(ld.reduced_remainder.is_zero());
        CHECK(ld.terms[0].second + ld.terms[1].second == Rat(3));
    }
    SUBCASE("identity holds exactly on randoms") {
        for (int i = 0; i < 60; ++i) {
            RatFunc a = testgen::random_ratfunc(4);
            auto ld = logderiv_residues(a);
            RatFunc acc{ld.polynomial_part};
            for (auto& [q, r] : ld.terms) acc = acc + RatFunc(q.derivative() * r, q);
            CHECK(acc + ld.reduced_remainder == a);
        }
    }
}

TEST_CASE("rational_roots") {
    auto roots = rational_roots(P({0, -1, 1}));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == Rat(0));
    CHECK(roots[1] == Rat(1));
    roots = rational_roots(P({-1, 2}));
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == Rat(1, 2));
    CHECK(rational_roots(P({1, 0, 1})).empty());
    CHECK_THROWS_AS(rational_roots(Poly()), MathError);
    SUBCASE("every returned root evaluates to zero") {
        for (int i = 0; i < 30; ++i) {
            Poly p = testgen::random_nonzero_poly(4);
            for (const Rat& r : rational_roots(p)) CHECK(p.eval(r).is_zero());
        }
    }
    SUBCASE("constructed roots are all found") {
        Poly p = (t - Poly(Rat(1, 3))) * (t + Poly(Rat(7, 2))) * P({1, 1, 1});
        auto rr = rational_roots(p);
        REQUIRE(rr.size() == 2);
        CHECK(rr[0] == Rat(-7, 2));
        CHECK(rr[1] == Rat(1, 3));
    }
}

TEST_CASE("resultant and interpolation") {
    // res(t^2+1, t) = 1; res((t-1)(t-2), (t-3)) = (3-1)(3-2) scaled by lc
    CHECK(resultant(P({1, 0, 1}), t) == Rat(1));
    CHECK(resultant(P({2, -3, 1}), P({-3, 1})) == Rat(2));
    CHECK(resultant(P({-1, 1}) * P({-2, 1}), P({-1, 1})) == Rat(0));
    Poly p = interpolate({{Rat(0), Rat(1)}, {Rat(1), Rat(2)}, {Rat(2), Rat(5)}});
    CHECK(p == P({1, 0, 1}));
}

TEST_CASE("roots of rational functions") {
    CHECK(*sqrt_ratfunc(RatFunc(t.pow(2))) == RatFunc(t));
    CHECK(!sqrt_ratfunc(RatFunc(t)).has_value());
    CHECK(*nth_root_ratfunc(RatFunc(P({1}), t.pow(8)), 8) == RatFunc(P({1}), t));
    auto r = sqrt_ratfunc(RatFunc(P({0, 0, 4})));
    REQUIRE(r.has_value());
    CHECK(*r == RatFunc(P({0, 2})));
    // sign canonicalization: sqrt((−t)^2) has positive leading coefficient
    CHECK(*sqrt_ratfunc(RatFunc(t.pow(2))) == RatFunc(t));
}

TEST_CASE("solve_linear") {
    // x + y = 3, x - y = 1
    auto sol = solve_linear({{Rat(1), Rat(1)}, {Rat(1), Rat(-1)}}, {Rat(3), Rat(1)});
    REQUIRE(sol.has_value());
    CHECK(sol->particular == std::vector<Rat>{Rat(2), Rat(1)});
    CHECK(sol->nullspace.empty());
    // inconsistent
    CHECK(!solve_linear({{Rat(1), Rat(1)}, {Rat(1), Rat(1)}}, {Rat(0), Rat(1)}).has_value());
    // underdetermined
    sol = solve_linear({{Rat(1), Rat(1)}}, {Rat(2)});
    REQUIRE(sol.has_value());
    CHECK(sol->nullspace.size() == 1);
}

TEST_CASE("rendering round shapes") {
    CHECK(P({-1, 0, 1}).to_string() == "t^2 - 1");
    CHECK(RatFunc(P({1}), P({0, 4})).to_string() == "1/(4*t)");
    CHECK(RatFunc(P({-1}), P({0, 8})).to_string() == "-1/(8*t)");
    CHECK(RatFunc(P({1}), t).to_string() == "1/t");
    CHECK(RatFunc(P({-1, 0, 1}), P({0, 1, 0, 1})).to_string() == "(t^2 - 1)/(t^3 + t)");
    CHECK(Poly::from_coeffs({Rat(0), Rat(1, 2)}).to_string() == "(1/2)*t");
}
