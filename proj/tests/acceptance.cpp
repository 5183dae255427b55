// Acceptance suite: exact symbolic checks, one line per criterion.
// Exit code = number of failed criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "diffquat/commands.hpp"
#include "diffquat/criteria.hpp"
#include "diffquat/expr.hpp"
#include "diffquat/standard.hpp"

#ifndef TEST_DATA_DIR
#define TEST_DATA_DIR "tests/data"
#endif

using namespace diffquat;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Criterion {
    std::ostringstream log;
    bool ok = true;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            log << "    failed: " << what << "\n";
        }
    }
};

void run(int number, const std::string& title, double seconds_limit,
         const std::function<void(Criterion&)>& body) {
    Criterion c;
    auto start = Clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.log << "    exception: " << e.what() << "\n";
    }
    double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    if (elapsed > seconds_limit) {
        c.ok = false;
        c.log << "    time limit exceeded: " << elapsed << " s > " << seconds_limit << " s\n";
    }
    std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << number << ". " << title << " (" << elapsed
              << " s)\n"
              << c.log.str();
    if (!c.ok) ++g_failures;
}

Poly P(std::initializer_list<long> coeffs) {
    std::vector<Rat> c;
    for (long v : coeffs) c.emplace_back(v);
    return Poly::from_coeffs(std::move(c));
}

const RatFunc rf_t = RatFunc::t();
const RatFunc rf_1 = RatFunc(Rat(1));

DerivationSpec radical_tower_spec() { return {RatFunc(P({-1}), P({0, 8})), RatFunc(), RatFunc()}; }
DerivationSpec primitive_hint_spec() {
    return {RatFunc(P({-1}), P({0, 4})), RatFunc(P({-1}), P({0, 2})), RatFunc(P({1}), P({0, 2}))};
}
DerivationSpec generic_fallback_spec() { return {RatFunc(P({-1}), P({0, 4})), -rf_1, RatFunc()}; }

std::string data(const char* name) { return std::string(TEST_DATA_DIR) + "/" + name; }

std::mt19937 rng(987654321u);

Rat rand_rat(int bound) {
    std::uniform_int_distribution<long> num(-bound, bound);
    std::uniform_int_distribution<long> den(1, bound);
    return Rat(num(rng), den(rng));
}

Poly rand_poly(int deg, int bound) {
    std::uniform_int_distribution<int> d(0, deg);
    std::vector<Rat> c(static_cast<std::size_t>(d(rng)) + 1);
    for (auto& x : c) x = rand_rat(bound);
    return Poly::from_coeffs(std::move(c));
}

RatFunc rand_ratfunc(int deg, int bound) {
    Poly den = rand_poly(deg, bound);
    while (den.is_zero()) den = rand_poly(deg, bound);
    return RatFunc(rand_poly(deg, bound), den);
}

} // namespace

int main() {
    run(1, "Riccati reproduction of the three reference equations", 0.3, [](Criterion& c) {
        struct Case {
            DerivationSpec spec;
            const char* rendered;
            RiccatiEq expected(const TowerPtr& tw);
        };
        QuatAlgebra alg(rf_1, rf_t);
        auto tw = Tower::make_base(alg.base);
        TowerElem xi = TowerElem::from_rat(tw, Rat(1));

        auto check_one = [&](const DerivationSpec& spec, const char* rendered, const RatFunc& a0,
                             const RatFunc& a1c, const RatFunc& a2c) {
            auto s = Clock::now();
            RiccatiEq eq = build_riccati(alg, spec, xi);
            double el = std::chrono::duration<double>(Clock::now() - s).count();
            c.require(el < 0.1, std::string("per-equation time for ") + rendered);
            c.require(eq.to_string() == rendered, std::string("exact string ") + rendered +
                                                      ", got " + eq.to_string());
            c.require(eq.a0.equals(TowerElem::from_ratfunc(tw, a0)), "a0 normal form");
            c.require(eq.a1c.equals(TowerElem::from_ratfunc(tw, a1c)), "a1 normal form");
            c.require(eq.a2c.equals(TowerElem::from_ratfunc(tw, a2c)), "a2 normal form");
        };
        check_one(radical_tower_spec(), "X' = (1/(4*t))*X", RatFunc(), RatFunc(P({1}), P({0, 4})),
                  RatFunc());
        check_one(primitive_hint_spec(), "X' = (1/t)*X^2", RatFunc(), RatFunc(),
                  RatFunc(P({1}), P({0, 1})));
        check_one(generic_fallback_spec(), "X' = X^2 - t", -rf_t, RatFunc(), rf_1);
    });

    run(2, "radical-tower instance end to end through `split`", 1.0, [](Criterion& c) {
        CliFlags flags;
        flags.json = true;
        CommandResult res = run_command("split", data("radical_tower.prob"), flags);
        c.require(res.exit_code == 0, "exit code 0");
        auto doc = nlohmann::ordered_json::parse(res.output);
        c.require(doc["tower"].size() == 1, "single tower step");
        c.require(doc["tower"][0]["kind"] == "radical", "radical step");
        c.require(doc["tower"][0]["n"] == 8, "radical index 8");
        c.require(doc["tower"][0]["f"] == "t", "radicand t");
        c.require(doc["det_F"] == "1", "det F = 1");
        c.require(doc["verified"] == true, "verified flag");
        // re-verify the parsed certificate exactly
        SplitCertificate cert = parse_certificate_json(doc);
        CertVerifyReport rep = verify_certificate(cert);
        c.require(rep.pass && rep.det_is_one, "exact F' = PF recheck");
    });

    run(3, "solver regressions", 1.0, [](Criterion& c) {
        DiffBase b1;
        auto empty = riccati_rational_solutions(b1, {-rf_t, RatFunc(), rf_1});
        c.require(empty.isolated.empty() && !empty.has_family, "X' = X^2 - t has no rational solution");
        c.require(empty.status == SolveStatus::Complete, "emptiness is definitive");

        auto zero = riccati_rational_solutions(b1, {RatFunc(), RatFunc(), RatFunc(P({1}), P({0, 1}))});
        c.require(zero.isolated.size() == 1 && zero.isolated[0].is_zero() && !zero.has_family,
                  "X' = X^2/t solves exactly to {0}");

        auto rad = solve_linear_radical(b1, RatFunc(P({-1}), P({0, 8})), 16);
        c.require(rad.has_value() && rad->n == 8, "minimal radical index 8 for -1/(8t)");
        c.require(rad.has_value() && rad->f == RatFunc(P({1}), P({0, 1})), "radicand 1/t");

        c.require(!logderiv_multiple(b1, rf_1).has_value(), "logderiv_multiple(1) is none");
    });

    run(4, "pattern instance over (t, t) with a = 1", 1.0, [](Criterion& c) {
        QuatAlgebra alg(rf_t, rf_t);
        DerivationSpec spec{RatFunc(), rf_1, RatFunc()};
        SplitCertificate cert = construct_certificate(alg, spec);
        c.require(cert.verified, "certificate verified");
        c.require(cert.tower->height() == 2, "tower Q(t)(sqrt t)(mu)");
        c.require(cert.tower->step(0).kind == StepKind::Radical && cert.tower->step(0).n == 2,
                  "first step is the square root of t");
        bool radicand_t = cert.tower->step(0).f.as_base().has_value() &&
                          *cert.tower->step(0).f.as_base() == rf_t;
        c.require(radicand_t, "radicand is t");
        c.require(cert.tower->step(1).kind == StepKind::HyperExp, "second step hyperexponential");
        TowerElem xi = TowerElem::generator(cert.tower, 0);
        TowerElem expect_rate = xi - TowerElem::from_ratfunc(cert.tower, RatFunc(P({1}), P({0, 4})));
        c.require(cert.mu_rate.equals(expect_rate), "mu rate sqrt(t) - 1/(4t)");
        c.require(verify_certificate(cert).pass, "exact F' = PF");
    });

    run(5, "generic bound on 25 randomized instances", 30.0, [](Criterion& c) {
        std::vector<RatFunc> pool{rf_t, RatFunc(P({1, 0, 1})), rf_1, RatFunc(P({0, -1, 0, 1}))};
        for (int i = 0; i < 25; ++i) {
            QuatAlgebra alg(pool[static_cast<std::size_t>(rng() % pool.size())],
                            pool[static_cast<std::size_t>(rng() % pool.size())]);
            DerivationSpec spec{rand_ratfunc(2, 3), rand_ratfunc(2, 3), rand_ratfunc(2, 3)};
            SplitCertificate cert = construct_certificate(alg, spec);
            c.require(cert.verified, "instance verified");
            c.require(cert.f.det().is_one(), "det F = 1");
            c.require(trdeg_report(cert) <= 3, "transcendence degree at most 3");
            int generic = 0;
            for (const auto& n : cert.notes)
                if (n.find("generic Riccati solution") != std::string::npos) ++generic;
            if (generic == 2) c.require(cert.trdeg == 3, "family fallback reports degree 3");
        }
    });

    run(6, "finite-splitting and non-splitting criteria", 5.0, [](Criterion& c) {
        c.require(finite_split_witness_check(P({0, 1}), RatFunc(P({1}), P({0, 1, -1})), P({1}),
                                             P({1}), 1, Rat(1)),
                  "witness (1, 1, 1) for a = 1/(t - t^2)");
        auto repa = nonsplit_algebraic_check(P({0, 1}), RatFunc(P({1}), P({0, 1})));
        c.require(repa.not_split && repa.condition == 'a', "(t, 1/t) not split via (a)");
        auto repb = nonsplit_algebraic_check(P({0, -1, 0, 1}),
                                             RatFunc(P({1}), P({0, 0, 1}) * P({2, 1})));
        c.require(repb.not_split && repb.condition == 'b',
                  "(t^3 - t, 1/(t^2(t+2))) not split via (b)");
        auto repn = nonsplit_algebraic_check(P({0, 1}), RatFunc(P({1}), P({0, 1, -1})));
        c.require(!repn.not_split, "(t, 1/(t - t^2)) has no verdict");

        int checked = 0;
        for (int i = 0; i < 100; ++i) {
            // alternate Hilbert-90 shaped and generic theta
            if (i % 2 == 0) {
                Poly g0p = rand_poly(2, 3), g1p = rand_poly(2, 3);
                if (g0p.is_zero() || g1p.is_zero()) continue;
                Poly norm = g0p * g0p - P({0, 1}) * g1p * g1p;
                if (norm.is_zero()) continue;
                RatFunc g0(g0p * g0p + P({0, 1}) * g1p * g1p, norm);
                RatFunc g1(g0p * g1p * Rat(2), norm);
                auto res = norm_constant_check(rf_t, g0, g1);
                c.require(res.logderiv_in_xik == res.norm_constant && res.norm_constant,
                          "equivalence on norm-one theta");
            } else {
                RatFunc g0 = rand_ratfunc(2, 3), g1 = rand_ratfunc(2, 3);
                if (g0.is_zero() && g1.is_zero()) continue;
                if ((g0 * g0 - rf_t * g1 * g1).is_zero()) continue;
                auto res = norm_constant_check(rf_t, g0, g1);
                c.require(res.logderiv_in_xik == res.norm_constant, "equivalence on generic theta");
            }
            ++checked;
        }
        c.require(checked >= 90, "enough sampled theta");
    });

    run(7, "standard-derivation analysis and standardization", 2.0, [](Criterion& c) {
        QuatAlgebra alg(rf_1, rf_t);
        StandardReport rep = standard_analyze(alg, radical_tower_spec());
        c.require(rep.status == StandardReport::Status::NotStandard,
                  "reference inner part is not standard");

        StandardReport zero = standard_analyze(alg, {});
        auto tw = Tower::make_base(alg.base);
        c.require(zero.status == StandardReport::Status::Standard, "zero inner part is standard");
        c.require(zero.pair && zero.pair->first.equals(QuatElem::unit_u(tw)) &&
                      zero.pair->second.equals(QuatElem::unit_v(tw)),
                  "pair (u, v)");

        SplitCertificate cert = construct_certificate(alg, radical_tower_spec());
        Standardized st = standardize_from_split(cert, cert.mu);
        c.require((st.u_mat * st.u_mat).equals(Mat2::diag(st.theta_sq, st.theta_sq)),
                  "U^2 = theta^2");
        c.require((st.v_mat * st.v_mat).equals(Mat2::diag(st.theta_sq, st.theta_sq)),
                  "V^2 = theta^2");
        Mat2 uv = st.u_mat * st.v_mat;
        Mat2 vu = st.v_mat * st.u_mat;
        c.require(vu.equals(uv.scaled(TowerElem::from_rat(cert.tower, Rat(-1)))), "VU = -UV");
        Mat2 p = build_P(cert.algebra, cert.spec, cert.xi);
        Mat2 dpu = st.u_mat.derive() + st.u_mat * p - p * st.u_mat;
        c.require(dpu.equals(st.u_mat.scaled(cert.mu_rate)), "d_P(U) = (theta'/theta) U");
    });

    run(8, "property suites", 30.0, [](Criterion& c) {
        // Leibniz in several derivation contexts
        auto leibniz = [&](const TowerPtr& tw, const std::vector<TowerElem>& gens,
                           const char* what) {
            auto random_elem = [&]() {
                TowerElem acc = TowerElem::from_ratfunc(tw, rand_ratfunc(2, 3));
                for (const auto& g : gens) {
                    std::uniform_int_distribution<int> e(0, 2);
                    int k = e(rng);
                    if (k > 0) acc = acc + g.pow(k) * TowerElem::from_ratfunc(tw, rand_ratfunc(1, 3));
                }
                return acc;
            };
            for (int i = 0; i < 100; ++i) {
                TowerElem x = random_elem(), y = random_elem();
                if (!(x * y).derive().equals(x * y.derive() + x.derive() * y)) {
                    c.require(false, std::string("Leibniz in context ") + what);
                    return;
                }
            }
        };
        DiffBase b1;
        leibniz(Tower::make_base(b1), {}, "t'=1");
        DiffBase bq;
        bq.t_prime = RatFunc(P({0, 0, 1}));
        leibniz(Tower::make_base(bq), {}, "t'=t^2");
        {
            auto tw = Tower::make_base(b1);
            auto adj = Tower::adjoin_step(tw, TowerStep::radical("theta", 4, TowerElem::from_ratfunc(tw, rf_t)));
            leibniz(adj.tower, {adj.gen}, "radical");
        }
        {
            auto tw = Tower::make_base(b1);
            auto a1 = Tower::adjoin_step(tw, TowerStep::primitive("ell", TowerElem::from_ratfunc(tw, RatFunc(P({1}), P({0, 1})))));
            auto a2 = Tower::adjoin_step(a1.tower, TowerStep::hyperexp("mu", TowerElem::from_ratfunc(a1.tower, rf_t)));
            leibniz(a2.tower, {TowerElem::generator(a2.tower, 0), TowerElem::generator(a2.tower, 1)},
                    "primitive+hyperexp");
        }
        {
            auto tw = Tower::make_base(b1);
            TowerElem z = TowerElem::from_rat(tw, Rat(0));
            auto adj = Tower::adjoin_step(tw, TowerStep::riccati_gen("lam", z, z, TowerElem::from_ratfunc(tw, RatFunc(P({1}), P({0, 1})))));
            leibniz(adj.tower, {adj.gen}, "riccati generator");
        }

        // phi intertwining on the basis and 50 random elements
        {
            QuatAlgebra alg(rf_t, RatFunc(P({1, 0, 1})));
            DerivationSpec spec{rand_ratfunc(1, 3), rand_ratfunc(1, 3), rand_ratfunc(1, 3)};
            auto xr = resolve_xi(alg, Tower::make_base(alg.base));
            Mat2 p = build_P(alg, spec, xr.xi);
            auto random_quat = [&]() {
                auto r = [&] { return TowerElem::from_ratfunc(xr.tower, rand_ratfunc(1, 3)); };
                return QuatElem{r(), r(), r(), r()};
            };
            auto check_elem = [&](const QuatElem& x, const char* what) {
                Mat2 lhs = phi_map(alg, xr.xi, apply_derivation(alg, spec, x));
                Mat2 m = phi_map(alg, xr.xi, x);
                Mat2 rhs = m.derive() + m * p - p * m;
                c.require(lhs.equals(rhs), std::string("phi intertwining on ") + what);
            };
            check_elem(QuatElem::scalar(xr.tower, rf_1), "1");
            check_elem(QuatElem::unit_u(xr.tower), "u");
            check_elem(QuatElem::unit_v(xr.tower), "v");
            check_elem(QuatElem::unit_uv(xr.tower), "uv");
            bool all = true;
            for (int i = 0; i < 50; ++i) {
                QuatElem x = random_quat();
                Mat2 lhs = phi_map(alg, xr.xi, apply_derivation(alg, spec, x));
                Mat2 m = phi_map(alg, xr.xi, x);
                all = all && lhs.equals(m.derive() + m * p - p * m);
            }
            c.require(all, "phi intertwining on 50 random elements");
        }

        // parser round trip on 200 random expressions
        {
            bool all = true;
            for (int i = 0; i < 200; ++i) {
                RatFunc f = rand_ratfunc(4, 9);
                all = all && parse_ratfunc(f.to_string()) == f;
            }
            c.require(all, "parser round trip");
        }

        // zero/pole oracle on the quadratic-derivation instance
        {
            DiffBase quad;
            quad.t_prime = RatFunc(P({0, 0, 1}));
            for (int n = 1; n <= 5; ++n) {
                auto rep = zeropole_oracle(quad, RatFunc(Poly::monomial(Rat(1), n)), n);
                c.require(rep.all_pass, "zero/pole oracle on f = t^n");
            }
            auto neg = zeropole_oracle(quad, RatFunc(Poly(Rat(1)), Poly::monomial(Rat(1), 3)), -3);
            c.require(neg.all_pass, "zero/pole oracle on f = t^-3");
        }
    });

    run(9, "diagnostic note surfaces in the hinted pipeline", 2.0, [](Criterion& c) {
        CliFlags flags;
        flags.json = true;
        CommandResult res = run_command("split", data("primitive_hint.prob"), flags);
        c.require(res.exit_code == 0, "exit code 0");
        auto doc = nlohmann::ordered_json::parse(res.output);
        c.require(doc["verified"] == true, "verified");
        c.require(doc["trdeg"] == 1, "transcendence degree 1");
        bool saw = false;
        for (const auto& n : doc["notes"])
            if (n.get<std::string>().find("{0}") != std::string::npos) saw = true;
        c.require(saw, "note referencing the solver output {0} present in the document");
    });

    std::cout << (g_failures == 0 ? "all criteria passed\n"
                                  : std::to_string(g_failures) + " criteria failed\n");
    return g_failures;
}
