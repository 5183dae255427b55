#include "diffquat/engine.hpp"

#include <algorithm>
#include <sstream>

#include "diffquat/decomp.hpp"

namespace diffquat {

namespace {

using Lift = std::function<TowerElem(const TowerElem&)>;

// search state that survives tower extensions and radical merges
struct BuildCtx {
    TowerPtr tower;
    TowerElem xi;
    RiccatiEq eq;
    std::vector<TowerElem> sols;

    void apply(const TowerPtr& nt, const Lift& lift) {
        tower = nt;
        xi = lift(xi);
        eq = RiccatiEq{lift(eq.a0), lift(eq.a1c), lift(eq.a2c)};
        for (auto& s : sols) s = lift(s);
    }

    void push_unique(const TowerElem& s) {
        for (const auto& x : sols)
            if (x.equals(s)) return;
        sols.push_back(s);
    }

    std::string fresh_name(const std::string& stem) const {
        auto taken = [&](const std::string& s) {
            if (s == tower->base().var) return true;
            for (int i = 0; i < tower->height(); ++i)
                if (tower->step(i).name == s) return true;
            return false;
        };
        std::string name = stem;
        int k = 1;
        while (taken(name)) name = stem + std::to_string(++k);
        return name;
    }
};

std::string render_set(const std::vector<RatFunc>& xs) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) os << ", ";
        os << xs[i].to_string();
    }
    os << "}";
    return os.str();
}

} // namespace

SplitCertificate construct_certificate(const QuatAlgebra& alg, const DerivationSpec& spec,
                                       const Hints& hints, const EngineOptions& opt) {
    SplitCertificate cert{alg, spec, nullptr, {}, {}, {}, {}, {}, {}, {}, false, 0, {}};

    XiResolution xr = resolve_xi(alg, Tower::make_base(alg.base));
    BuildCtx ctx;
    ctx.tower = xr.tower;
    ctx.xi = xr.xi;

    // radical hints may enable later merges; they cost no transcendence degree
    for (const auto& rh : hints.radicals) {
        auto adj = Tower::adjoin_step(
            ctx.tower, TowerStep::radical(ctx.fresh_name("theta"), rh.n,
                                          TowerElem::from_ratfunc(ctx.tower, rh.f)));
        TowerElem xi_keep = ctx.xi;
        ctx.tower = adj.tower;
        ctx.xi = adj.lift(xi_keep);
    }

    ctx.eq = build_riccati(alg, spec, ctx.xi);
    bool base_is_t1 = alg.base.t_prime == RatFunc(Rat(1));

    // 1. rational solutions
    std::vector<RatFunc> rational_found;
    if (base_is_t1) {
        auto b0 = ctx.eq.a0.as_base();
        auto b1 = ctx.eq.a1c.as_base();
        auto b2 = ctx.eq.a2c.as_base();
        if (b0 && b1 && b2) {
            RiccatiRatCoeffs rc{*b0, *b1, *b2};
            RiccatiSolutionSet rs = riccati_rational_solutions(alg.base, rc, opt.budget);
            rational_found = rs.all_rational();
            for (const RatFunc& x : rational_found)
                ctx.push_unique(TowerElem::from_ratfunc(ctx.tower, x));
            if (rs.status != SolveStatus::Complete)
                cert.notes.push_back("rational Riccati search was not complete: " +
                                     std::string(rs.status == SolveStatus::BestEffort
                                                     ? "best-effort"
                                                     : "budget exhausted"));
        }
    }

    // 2. +-sqrt pattern for single-generator inner parts
    if (ctx.sols.size() < 2) {
        if (auto pr = riccati_pattern_solutions(alg, spec, ctx.tower, ctx.eq)) {
            TowerElem plus = pr->plus, minus = pr->minus;
            ctx.apply(pr->tower, pr->lift);
            ctx.push_unique(plus);
            ctx.push_unique(minus);
            cert.notes.push_back("pattern solutions +-eta with eta^2 = " +
                                 (plus * plus).to_string());
        }
    }

    // 3. linear case: radical solutions of the homogeneous part X' = a1c X
    if (ctx.sols.size() < 2 && base_is_t1 && ctx.eq.a2c.is_zero()) {
        if (auto rate = ctx.eq.a1c.as_base()) {
            if (auto rad = solve_linear_radical(alg.base, *rate, opt.n_max); rad && rad->n >= 2) {
                RealizedRadical rr = realize_radical(ctx.tower, rad->n, rad->f,
                                                     ctx.fresh_name("theta"));
                ctx.apply(rr.tower, rr.lift);
                TowerElem theta = rr.elem;
                if (ctx.eq.a0.is_zero()) {
                    // two members of the c*theta solution family
                    ctx.sols.clear();
                    ctx.push_unique(theta);
                    ctx.push_unique(TowerElem::from_rat(ctx.tower, Rat(2)) * theta);
                } else if (ctx.sols.size() == 1) {
                    ctx.push_unique(ctx.sols[0] + theta);
                }
                cert.notes.push_back("linear homogeneous part solved by a radical of index " +
                                     std::to_string(rad->n));
            }
        }
    }

    // 4. hints: with one known solution y0, the substitution X = y0 + 1/Z turns
    // the equation into Z' = -(a1c + 2 a2c y0) Z - a2c; a primitive step
    // integrates it when the homogeneous rate vanishes.
    if (ctx.sols.size() == 1 && !hints.primitives.empty()) {
        TowerElem y0 = ctx.sols[0];
        TowerElem hom_rate = -(ctx.eq.a1c + TowerElem::from_rat(ctx.tower, Rat(2)) * ctx.eq.a2c * y0);
        if (hom_rate.is_zero() && !ctx.eq.a2c.is_zero()) {
            for (const RatFunc& w : hints.primitives) {
                TowerElem w_elem = TowerElem::from_ratfunc(ctx.tower, w);
                TowerElem ratio = ctx.eq.a2c / w_elem;
                if (!ratio.is_constant()) continue;
                auto adj = Tower::adjoin_step(
                    ctx.tower, TowerStep::primitive(ctx.fresh_name("ell"),
                                                    TowerElem::from_ratfunc(ctx.tower, w)));
                TowerElem ratio_keep = ratio, y0_keep = y0;
                ctx.apply(adj.tower, adj.lift);
                TowerElem z = -(adj.lift(ratio_keep) * adj.gen);
                TowerElem second = adj.lift(y0_keep) + z.inv();
                if (ctx.eq.is_solution(second)) {
                    ctx.push_unique(second);
                    cert.notes.push_back("rational Riccati solver returned " +
                                         render_set(rational_found) + "; second solution " +
                                         second.to_string() + " obtained via a primitive hint");
                    break;
                }
            }
        }
    }

    // 5. generic transcendental adjunction
    while (ctx.sols.size() < 2) {
        auto adj = Tower::adjoin_step(
            ctx.tower, TowerStep::riccati_gen(ctx.fresh_name("lambda"), ctx.eq.a0, ctx.eq.a1c,
                                              ctx.eq.a2c));
        TowerElem gen = adj.gen;
        ctx.apply(adj.tower, adj.lift);
        ctx.push_unique(gen);
        cert.notes.push_back("adjoined a generic Riccati solution " + gen.to_string());
    }

    cert.lambda1 = ctx.sols[0];
    cert.lambda2 = ctx.sols[1];

    // 6. mu with mu' = rate * mu
    TowerElem rate = build_mu_rate(alg, spec, ctx.xi, cert.lambda1);
    bool mu_done = false;
    if (rate.is_zero()) {
        cert.mu = TowerElem::from_rat(ctx.tower, Rat(1));
        mu_done = true;
    } else if (base_is_t1) {
        if (auto rate_b = rate.as_base()) {
            if (auto rad = solve_linear_radical(alg.base, *rate_b, opt.n_max)) {
                RealizedRadical rr = realize_radical(ctx.tower, rad->n, rad->f,
                                                     ctx.fresh_name("theta"));
                TowerElem mu_elem = rr.elem;
                cert.lambda1 = rr.lift(cert.lambda1);
                cert.lambda2 = rr.lift(cert.lambda2);
                ctx.apply(rr.tower, rr.lift);
                cert.mu = mu_elem;
                mu_done = true;
            }
        }
    }
    if (!mu_done) {
        auto adj = Tower::adjoin_step(ctx.tower,
                                      TowerStep::hyperexp(ctx.fresh_name("mu"), rate));
        TowerElem mu_elem = adj.gen;
        cert.lambda1 = adj.lift(cert.lambda1);
        cert.lambda2 = adj.lift(cert.lambda2);
        ctx.apply(adj.tower, adj.lift);
        cert.mu = mu_elem;
    }

    cert.tower = ctx.tower;
    cert.xi = ctx.xi;
    cert.mu_rate = build_mu_rate(alg, spec, cert.xi, cert.lambda1);
    cert.p = build_P(alg, spec, cert.xi);

    if (cert.lambda1.equals(cert.lambda2))
        throw MathError("internal: the two Riccati solutions coincide");
    if (cert.mu.is_zero()) throw MathError("internal: mu must be nonzero");

    TowerElem delta = cert.lambda1 - cert.lambda2;
    TowerElem inv_md = (cert.mu * delta).inv();
    cert.f = Mat2::of(cert.lambda1 * cert.mu, cert.lambda2 * inv_md, cert.mu, inv_md);
    cert.trdeg = ctx.tower->tr_degree();

    CertVerifyReport rep = verify_certificate(cert);
    if (!rep.pass || !rep.det_is_one)
        throw MathError("internal: constructed certificate failed verification at " +
                        rep.first_failure);
    cert.verified = true;
    return cert;
}

CertVerifyReport verify_certificate(const SplitCertificate& cert) {
    CertVerifyReport rep;
    Mat2 p;
    try {
        p = build_P(cert.algebra, cert.spec, cert.xi);
    } catch (const MathError& e) {
        rep.first_failure = std::string("P recomputation: ") + e.what();
        return rep;
    }
    TowerElem det = cert.f.det();
    rep.det_nonzero = !det.is_zero();
    rep.det_is_one = det.is_one();
    if (!rep.det_nonzero) {
        rep.first_failure = "det(F) = 0";
        return rep;
    }
    Mat2 lhs = cert.f.derive();
    Mat2 rhs = p * cert.f;
    static const char* entry_names[4] = {"(1,1)", "(1,2)", "(2,1)", "(2,2)"};
    for (int i = 0; i < 4; ++i) {
        if (!lhs.e[i].equals(rhs.e[i])) {
            rep.first_failure = std::string("F' = PF fails at entry ") + entry_names[i];
            return rep;
        }
    }
    rep.derivation_ok = true;
    rep.pass = true;
    return rep;
}

FSolutions riccati_from_F(const SplitCertificate& cert) {
    FSolutions out;
    RiccatiEq eq = build_riccati(cert.algebra, cert.spec, cert.xi);
    out.linear_branch = cert.spec.a2.is_zero() && cert.spec.a3.is_zero();

    const TowerElem& f11 = cert.f.e[0];
    const TowerElem& f12 = cert.f.e[1];
    const TowerElem& f21 = cert.f.e[2];
    const TowerElem& f22 = cert.f.e[3];

    if (!f21.is_zero() && !f22.is_zero()) {
        for (const TowerElem& ratio : {f11 / f21, f12 / f22}) {
            if (!eq.is_solution(ratio))
                throw MathError("ratio from F fails the splitting Riccati equation");
            bool dup = false;
            for (const auto& r : out.ratio) dup = dup || r.equals(ratio);
            if (!dup) out.ratio.push_back(ratio);
        }
    } else if (!out.linear_branch) {
        throw MathError("zero denominator entry in F outside the linear branch");
    } else {
        out.notes.push_back("ratio branch degenerate (zero second-row entry)");
    }

    if (out.linear_branch) {
        // eigen rate a1 xi + beta'/(4 beta) is the (1,1) entry of P
        TowerElem rate = build_P(cert.algebra, cert.spec, cert.xi).e[0].promoted(cert.tower);
        auto push_eigen = [&](const TowerElem& x) {
            if (x.is_zero()) return;
            if (!x.derive().equals(rate * x)) return;
            for (const auto& y : out.eigen)
                if (y.equals(x)) return;
            out.eigen.push_back(x);
        };
        push_eigen(f11);
        push_eigen(f12);
        if (!f21.is_zero()) push_eigen(f21.inv());
        if (!f22.is_zero()) push_eigen(f22.inv());
        out.notes.push_back("linear branch: entries solve X' = (a1 xi + beta'/(4 beta)) X");
    }
    return out;
}

Standardized standardize_from_split(const SplitCertificate& cert, const TowerElem& theta) {
    if (!cert.verified) throw MathError("standardize_from_split needs a verified certificate");
    TowerElem th = theta.promoted(cert.tower);
    if (th.is_zero()) throw MathError("theta must be nonzero");
    TowerElem rate = cert.mu_rate.promoted(cert.tower);
    if (!th.derive().equals(rate * th))
        throw MathError("theta does not solve the mu-rate equation");

    Mat2 finv = cert.f.inverse();
    TowerElem z = TowerElem::from_rat(cert.tower, Rat(0));
    Mat2 u_mat = cert.f * Mat2::of(th, z, z, -th) * finv;
    Mat2 v_mat = cert.f * Mat2::of(z, th, th, z) * finv;

    TowerElem th2 = th * th;
    Mat2 th2_id = Mat2::diag(th2, th2);
    if (!(u_mat * u_mat).equals(th2_id)) throw MathError("internal: U^2 != theta^2");
    if (!(v_mat * v_mat).equals(th2_id)) throw MathError("internal: V^2 != theta^2");
    if (!(v_mat * u_mat).equals((u_mat * v_mat).scaled(TowerElem::from_rat(cert.tower, Rat(-1)))))
        throw MathError("internal: VU != -UV");

    Mat2 p = build_P(cert.algebra, cert.spec, cert.xi);
    auto d_p = [&](const Mat2& m) { return m.derive() + m * p - p * m; };
    if (!d_p(u_mat).equals(u_mat.scaled(rate))) throw MathError("internal: d_P(U) != (theta'/theta) U");
    if (!d_p(v_mat).equals(v_mat.scaled(rate))) throw MathError("internal: d_P(V) != (theta'/theta) V");

    // pull back through phi: M = c0 I + c1 A + c2 B + c3 AB
    TowerElem xi = cert.xi.promoted(cert.tower);
    TowerElem beta = TowerElem::from_ratfunc(cert.tower, cert.algebra.beta);
    TowerElem half = TowerElem::from_ratfunc(cert.tower, RatFunc(Rat(1, 2)));
    auto pull = [&](const Mat2& m) {
        QuatElem q = QuatElem::zero(cert.tower);
        q.c0 = (m.e[0] + m.e[3]) * half;
        q.c1 = (m.e[0] - m.e[3]) * half / xi;
        q.c2 = (m.e[1] / beta + m.e[2]) * half;
        q.c3 = (m.e[1] / beta - m.e[2]) * half / xi;
        return q;
    };
    Standardized out{u_mat, v_mat, pull(u_mat), pull(v_mat), th2};

    // the pullbacks regenerate the algebra over the tower
    QuatElem uv1 = quat_mul(cert.algebra, out.u_tilde, out.v_tilde);
    QuatElem vu = quat_mul(cert.algebra, out.v_tilde, out.u_tilde);
    if (!vu.equals(-uv1)) throw MathError("internal: pullback pair does not anticommute");
    QuatElem usq = quat_mul(cert.algebra, out.u_tilde, out.u_tilde);
    if (!usq.c0.equals(th2) || !usq.c1.is_zero() || !usq.c2.is_zero() || !usq.c3.is_zero())
        throw MathError("internal: pullback u~ squared is not theta^2");
    return out;
}

int trdeg_report(const SplitCertificate& cert) {
    int d = cert.tower->tr_degree();
    if (cert.verified && d > 3)
        throw MathError("internal: certificate transcendence degree exceeds 3");
    return d;
}

} // namespace diffquat
