#include "diffquat/odesolve.hpp"

#include <algorithm>
#include <map>

#include "diffquat/decomp.hpp"
#include "diffquat/linalg.hpp"

namespace diffquat {

namespace {

void require_t1(const DiffBase& base, const char* op) {
    if (!(base.t_prime == RatFunc(Rat(1))))
        throw CapabilityError(std::string(op) + " supports only the base derivation t' = 1");
}

Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    return exact_div(a * b, poly_gcd(a, b)).monic();
}

// rows: coefficients of sum_j x_j cols[j] + rhs = 0
std::optional<LinearSolution> solve_poly_system(const std::vector<Poly>& cols, const Poly& rhs) {
    int maxdeg = rhs.degree();
    for (const Poly& c : cols) maxdeg = std::max(maxdeg, c.degree());
    std::size_t rows = static_cast<std::size_t>(maxdeg + 1);
    if (maxdeg < 0) rows = 1;
    std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(cols.size(), Rat(0)));
    std::vector<Rat> b(rows, Rat(0));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) a[i][j] = cols[j].coeff(static_cast<int>(i));
        b[i] = -rhs.coeff(static_cast<int>(i));
    }
    return solve_linear(std::move(a), std::move(b));
}

} // namespace

// ---------------------------------------------------------------------------
// log-derivative multiples and radical solutions

std::optional<LogDerivMultiple> logderiv_multiple(const DiffBase& base, const RatFunc& a) {
    require_t1(base, "logderiv_multiple");
    LogDerivParts ld = logderiv_residues(a);
    if (!ld.polynomial_part.is_zero()) return std::nullopt;
    if (!ld.reduced_remainder.is_zero()) return std::nullopt;
    mpz_class n(1);
    for (const auto& [q, r] : ld.terms) n = lcm_z(n, r.den());
    if (!n.fits_slong_p()) throw MathError("log-derivative index overflow");
    long ln = n.get_si();
    RatFunc f(Rat(1));
    for (const auto& [q, r] : ld.terms) {
        Rat e = r * Rat(n);
        f = f * RatFunc(q).pow(static_cast<int>(e.num().get_si()));
    }
    // exactness guard: n*a = f'/f
    if (!(f.derivative() / f == a * RatFunc(Rat(n)))) return std::nullopt;
    return LogDerivMultiple{static_cast<int>(ln), f};
}

std::optional<RadicalSolution> solve_linear_radical(const DiffBase& base, const RatFunc& a,
                                                    int n_max) {
    require_t1(base, "solve_linear_radical");
    auto ld = logderiv_multiple(base, a);
    if (!ld || ld->n > n_max) return std::nullopt;
    return RadicalSolution{ld->n, ld->f};
}

// ---------------------------------------------------------------------------
// linear equations

namespace {

// pairwise-coprime refinement of monic squarefree polynomials
std::vector<Poly> coprime_basis(std::vector<Poly> in) {
    std::vector<Poly> basis;
    for (Poly p : in) {
        p = p.monic();
        std::vector<Poly> queue{p};
        while (!queue.empty()) {
            Poly cur = queue.back();
            queue.pop_back();
            if (cur.degree() < 1) continue;
            bool split = false;
            for (std::size_t i = 0; i < basis.size(); ++i) {
                Poly g = poly_gcd(cur, basis[i]);
                if (g.degree() < 1) continue;
                if (g.degree() < basis[i].degree()) {
                    Poly rest = exact_div(basis[i], g).monic();
                    basis[i] = g;
                    basis.push_back(rest);
                }
                Poly cof = exact_div(cur, g).monic();
                if (cof.degree() >= 1) queue.push_back(cof);
                split = true;
                break;
            }
            if (!split) basis.push_back(cur);
        }
    }
    std::sort(basis.begin(), basis.end(),
              [](const Poly& x, const Poly& y) { return x.to_string() < y.to_string(); });
    basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
    return basis;
}

Poly squarefree_part(const Poly& p) {
    Poly out(Rat(1));
    for (const auto& [q, m] : squarefree_factor(p).factors) out = out * q;
    return out.monic();
}

// local numerator of the simple-pole part of f at the squarefree block q,
// for f with pole order exactly 1 there: f = b/q + (regular at q).
Poly local_order1_numerator(const RatFunc& f, const Poly& q) {
    RatFunc w = f * RatFunc(q); // regular at q, denominator coprime to q
    ExtGcd eg = poly_ext_gcd(w.den(), q);
    if (!eg.g.is_one()) throw MathError("internal: block with unexpected pole order");
    return divmod(w.num() * eg.s, q).second;
}

} // namespace

LinearSolutions linear_rational_solutions(const DiffBase& base, const RatFunc& a1,
                                          const RatFunc& a0) {
    require_t1(base, "linear_rational_solutions");
    LinearSolutions out;
    if (auto ld = logderiv_multiple(base, a1); ld && ld->n == 1) {
        out.hom = ld->f;
    }
    if (a0.is_zero()) {
        out.particular = RatFunc();
        return out;
    }

    // universal denominator from the coprime factor blocks of both denominators
    std::vector<Poly> seeds;
    if (a1.den().degree() > 0) seeds.push_back(squarefree_part(a1.den()));
    if (a0.den().degree() > 0) seeds.push_back(squarefree_part(a0.den()));
    std::vector<Poly> blocks = coprime_basis(seeds);

    Poly denom(Rat(1));
    for (const Poly& q : blocks) {
        int m1 = a1.is_zero() ? 0 : std::max(0, -a1.order_at(q));
        int m0 = std::max(0, -a0.order_at(q));
        int bound = 0;
        if (m1 >= 2) {
            bound = std::max(bound, m0 - m1);
        } else {
            if (m0 >= 1) bound = std::max(bound, m0 - 1);
            if (m1 == 1) {
                Poly b1 = local_order1_numerator(a1, q);
                for (const auto& [qq, rho] : rt_rational_residues(b1, q).parts) {
                    if (rho.is_integer() && rho.sign() < 0) {
                        mpz_class k = -rho.num();
                        if (k.fits_sint_p()) bound = std::max(bound, static_cast<int>(k.get_si()));
                    }
                }
            }
        }
        if (bound > 0) denom = denom * q.pow(bound);
    }

    int d0 = a0.num().degree() - a0.den().degree();
    int delta;
    if (a1.is_zero()) {
        delta = d0 + 1;
    } else {
        int d1 = a1.num().degree() - a1.den().degree();
        if (d1 >= 0) {
            delta = d0 - d1;
        } else if (d1 == -1) {
            delta = d0 + 1;
            Rat e = a1.num().lc() / a1.den().lc();
            mpz_class neg_e = -e.num();
            if (e.is_integer() && e.sign() < 0 && neg_e.fits_sint_p())
                delta = std::max(delta, static_cast<int>(neg_e.get_si()));
        } else {
            delta = d0 + 1;
        }
    }
    int num_deg = std::max(0, delta) + denom.degree();

    // L (Nn' D - Nn D') - (a1 L) Nn D = (a0 L) D^2
    Poly l = poly_lcm(a1.is_zero() ? Poly(Rat(1)) : a1.den(), a0.den());
    Poly a1l = a1.is_zero() ? Poly() : exact_div(a1.num() * l, a1.den());
    Poly a0l = exact_div(a0.num() * l, a0.den());
    Poly dd = denom.derivative();
    std::vector<Poly> cols;
    for (int j = 0; j <= num_deg; ++j) {
        Poly tj = Poly::monomial(Rat(1), j);
        Poly tj1 = j > 0 ? Poly::monomial(Rat(static_cast<long>(j)), j - 1) : Poly();
        Poly col = l * (tj1 * denom - tj * dd) - a1l * tj * denom;
        cols.push_back(col);
    }
    Poly rhs = -(a0l * denom * denom);
    auto sol = solve_poly_system(cols, rhs);
    if (!sol) return out;
    std::vector<Rat> coeffs = sol->particular;
    Poly numer = Poly::from_coeffs(std::move(coeffs));
    RatFunc x(numer, denom);
    if (x.derivative() == a1 * x + a0) out.particular = x;
    return out;
}

// ---------------------------------------------------------------------------
// Riccati rational solutions (hyperexponential search on w' + w^2 = r)

namespace {

struct LocalCand {
    RatFunc part; // contribution to omega
    Rat alpha;
};

struct PoleData {
    Rat c;
    int order;
    std::vector<LocalCand> cands;
};

struct Case1Analysis {
    bool doomed = false;
    bool best_effort = false;
    std::vector<PoleData> poles;
    std::vector<LocalCand> inf_cands;
    std::vector<std::string> notes;
};

// Taylor coefficients of a rational function regular at c.
std::vector<Rat> taylor_at(RatFunc f, const Rat& c, int count) {
    std::vector<Rat> out;
    Rat factorial(1);
    for (int j = 0; j < count; ++j) {
        if (j > 0) factorial *= Rat(static_cast<long>(j));
        out.push_back(f.eval(c) / factorial);
        if (j + 1 < count) f = f.derivative();
    }
    return out;
}

Case1Analysis analyze_case1(const RatFunc& r) {
    Case1Analysis an;
    if (r.is_zero()) {
        an.inf_cands.push_back({RatFunc(), Rat(0)});
        an.inf_cands.push_back({RatFunc(), Rat(1)});
        return an;
    }

    for (const auto& [q, m] : factor_basis(r.den())) {
        if (q.degree() > 1) {
            an.best_effort = true;
            an.notes.push_back("pole locations at roots of " + q.to_string() +
                               " are irrational; search restricted to rational poles");
            continue;
        }
        Rat c = -q.coeff(0); // q = t - c
        PoleData pd{c, m, {}};
        if (m == 1) {
            pd.cands.push_back({RatFunc(Poly(Rat(1)), q), Rat(1)});
        } else if (m == 2) {
            RatFunc t2 = r * RatFunc(q.pow(2));
            Rat b = t2.eval(c);
            auto disc = nth_root_rat(Rat(1) + Rat(4) * b, 2);
            if (!disc) {
                an.doomed = true;
                return an;
            }
            Rat ap = (Rat(1) + *disc) / Rat(2);
            Rat am = (Rat(1) - *disc) / Rat(2);
            pd.cands.push_back({RatFunc(Poly(ap), q), ap});
            if (ap != am) pd.cands.push_back({RatFunc(Poly(am), q), am});
        } else if (m % 2 == 1) {
            an.doomed = true; // odd-order pole of order >= 3
            return an;
        } else {
            int nu = m / 2;
            RatFunc tm = r * RatFunc(q.pow(m));
            std::vector<Rat> tau = taylor_at(tm, c, nu);
            auto s0 = nth_root_rat(tau[0], 2);
            if (!s0) {
                an.doomed = true;
                return an;
            }
            std::vector<Rat> sigma(static_cast<std::size_t>(nu - 1), Rat(0));
            sigma[0] = *s0;
            for (int i = 1; i <= nu - 2; ++i) {
                Rat acc = tau[static_cast<std::size_t>(i)];
                for (int j = 1; j < i; ++j)
                    acc -= sigma[static_cast<std::size_t>(j)] * sigma[static_cast<std::size_t>(i - j)];
                sigma[static_cast<std::size_t>(i)] = acc / (Rat(2) * sigma[0]);
            }
            Rat b = tau[static_cast<std::size_t>(nu - 1)];
            for (int j = 1; j <= nu - 2; ++j)
                b -= sigma[static_cast<std::size_t>(j)] * sigma[static_cast<std::size_t>(nu - 1 - j)];
            // s(t) = sum sigma_i (t-c)^{i-nu}
            std::vector<Rat> sc(sigma.begin(), sigma.end());
            Poly snum = Poly::from_coeffs(std::move(sc)).shift(-c);
            RatFunc s(snum, q.pow(nu));
            Rat ap = (b / sigma[0] + Rat(static_cast<long>(nu))) / Rat(2);
            Rat am = (-(b / sigma[0]) + Rat(static_cast<long>(nu))) / Rat(2);
            pd.cands.push_back({s + RatFunc(Poly(ap), q), ap});
            pd.cands.push_back({-s + RatFunc(Poly(am), q), am});
        }
        an.poles.push_back(std::move(pd));
    }
    if (an.doomed) return an;

    int o = r.den().degree() - r.num().degree();
    if (o >= 3) {
        an.inf_cands.push_back({RatFunc(), Rat(0)});
        an.inf_cands.push_back({RatFunc(), Rat(1)});
    } else if (o == 2) {
        Rat b = r.num().lc() / r.den().lc();
        auto disc = nth_root_rat(Rat(1) + Rat(4) * b, 2);
        if (!disc) {
            an.doomed = true;
            return an;
        }
        Rat ap = (Rat(1) + *disc) / Rat(2);
        Rat am = (Rat(1) - *disc) / Rat(2);
        an.inf_cands.push_back({RatFunc(), ap});
        if (ap != am) an.inf_cands.push_back({RatFunc(), am});
    } else if (o == 1) {
        an.doomed = true;
        return an;
    } else {
        int growth = -o;
        if (growth % 2 == 1) {
            an.doomed = true; // odd degree growth has no rational square root part
            return an;
        }
        int nu = growth / 2;
        const Poly& n = r.num();
        const Poly& d = r.den();
        auto lead = nth_root_rat(n.lc() / d.lc(), 2);
        if (!lead) {
            an.doomed = true;
            return an;
        }
        Poly s = Poly::monomial(*lead, nu);
        Poly rem = n - s * s * d;
        int guard = 0;
        while (rem.degree() > d.degree() + nu - 1 && guard++ <= nu + 2) {
            int j = rem.degree() - d.degree() - nu;
            if (j < 0 || j >= nu) break;
            Rat corr = rem.lc() / (Rat(2) * *lead * d.lc());
            s = s + Poly::monomial(corr, j);
            rem = n - s * s * d;
        }
        if (rem.degree() > d.degree() + nu - 1)
            throw MathError("internal: square-root expansion at infinity did not stabilize");
        Rat b = rem.coeff(d.degree() + nu - 1) / d.lc();
        Rat ap = (b / *lead - Rat(static_cast<long>(nu))) / Rat(2);
        Rat am = (-(b / *lead) - Rat(static_cast<long>(nu))) / Rat(2);
        an.inf_cands.push_back({RatFunc(s), ap});
        an.inf_cands.push_back({RatFunc(-s), am});
    }
    return an;
}

} // namespace

std::vector<RatFunc> RiccatiSolutionSet::all_rational() const {
    std::vector<RatFunc> out = isolated;
    if (has_family) {
        for (const RatFunc& f : family_reps)
            if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    }
    return out;
}

RiccatiSolutionSet riccati_rational_solutions(const DiffBase& base, const RiccatiRatCoeffs& eq,
                                              long budget) {
    require_t1(base, "riccati_rational_solutions");
    RiccatiSolutionSet out;

    if (eq.a2.is_zero()) {
        LinearSolutions ls = linear_rational_solutions(base, eq.a1, eq.a0);
        if (!ls.particular) return out; // no rational solution of the inhomogeneous equation
        if (ls.hom) {
            out.has_family = true;
            out.family_reps = {*ls.particular, *ls.particular + *ls.hom};
            out.notes.push_back("affine one-parameter family of a linear equation");
        } else {
            out.isolated.push_back(*ls.particular);
        }
        return out;
    }

    RatFunc aa = -(eq.a1 + eq.a2.derivative() / eq.a2);
    RatFunc bb = eq.a0 * eq.a2;
    RatFunc r = aa * aa / RatFunc(Rat(4)) + aa.derivative() / RatFunc(Rat(2)) - bb;

    Case1Analysis an = analyze_case1(r);
    out.notes.insert(out.notes.end(), an.notes.begin(), an.notes.end());
    if (an.doomed) return out; // definitively no rational solution
    if (an.best_effort) out.status = SolveStatus::BestEffort;

    long combos = static_cast<long>(an.inf_cands.size());
    for (const auto& pd : an.poles) combos *= static_cast<long>(pd.cands.size());
    if (combos > budget) {
        out.status = SolveStatus::Exhausted;
        out.notes.push_back("branch enumeration exceeds the work budget");
        return out;
    }

    struct Found {
        RatFunc x;
        bool family;
    };
    std::vector<Found> found;

    std::vector<std::size_t> idx(an.poles.size(), 0);
    for (const auto& inf : an.inf_cands) {
        std::fill(idx.begin(), idx.end(), 0);
        bool more = true;
        while (more) {
            Rat d_rat = inf.alpha;
            RatFunc omega = inf.part;
            for (std::size_t i = 0; i < an.poles.size(); ++i) {
                const LocalCand& lc = an.poles[i].cands[idx[i]];
                d_rat -= lc.alpha;
                omega = omega + lc.part;
            }
            if (d_rat.is_integer() && d_rat.sign() >= 0) {
                mpz_class dz = d_rat.num();
                if (!dz.fits_sint_p() || dz.get_si() > std::max<long>(64, budget / 50)) {
                    out.status = SolveStatus::Exhausted;
                    out.notes.push_back("polynomial degree bound exceeds the work budget");
                } else {
                    int d = static_cast<int>(dz.get_si());
                    RatFunc r2 = omega.derivative() + omega * omega - r;
                    Poly m = poly_lcm(omega.is_zero() ? Poly(Rat(1)) : omega.den(),
                                      r2.is_zero() ? Poly(Rat(1)) : r2.den());
                    Poly a2p = m;
                    Poly a1p = omega.is_zero() ? Poly() : exact_div(omega.num() * m, omega.den()) * Rat(2);
                    Poly a0p = r2.is_zero() ? Poly() : exact_div(r2.num() * m, r2.den());
                    std::vector<Poly> cols;
                    for (int j = 0; j < d; ++j) {
                        Poly tj2 = j >= 2 ? Poly::monomial(Rat(static_cast<long>(j) * (j - 1)), j - 2) : Poly();
                        Poly tj1 = j >= 1 ? Poly::monomial(Rat(static_cast<long>(j)), j - 1) : Poly();
                        cols.push_back(a2p * tj2 + a1p * tj1 + a0p * Poly::monomial(Rat(1), j));
                    }
                    Poly lead = a2p * (d >= 2 ? Poly::monomial(Rat(static_cast<long>(d) * (d - 1)), d - 2) : Poly()) +
                                a1p * (d >= 1 ? Poly::monomial(Rat(static_cast<long>(d)), d - 1) : Poly()) +
                                a0p * Poly::monomial(Rat(1), d);
                    auto sol = solve_poly_system(cols, lead);
                    if (sol) {
                        auto build_p = [&](const std::vector<Rat>& lower) {
                            std::vector<Rat> cs = lower;
                            cs.resize(static_cast<std::size_t>(d) + 1, Rat(0));
                            cs[static_cast<std::size_t>(d)] = Rat(1);
                            return Poly::from_coeffs(std::move(cs));
                        };
                        std::vector<Poly> reps{build_p(sol->particular)};
                        if (!sol->nullspace.empty()) {
                            std::vector<Rat> alt = sol->particular;
                            for (std::size_t k = 0; k < alt.size(); ++k) alt[k] += sol->nullspace[0][k];
                            reps.push_back(build_p(alt));
                        }
                        for (const Poly& p : reps) {
                            RatFunc x = (aa / RatFunc(Rat(2)) - omega - RatFunc(p.derivative(), p)) / eq.a2;
                            if (eq.is_solution(x)) found.push_back({x, !sol->nullspace.empty()});
                        }
                    }
                }
            }
            // advance the mixed-radix index
            more = false;
            for (std::size_t i = 0; i < idx.size(); ++i) {
                if (++idx[i] < an.poles[i].cands.size()) {
                    more = true;
                    break;
                }
                idx[i] = 0;
            }
            if (an.poles.empty()) break;
        }
    }

    std::vector<RatFunc> family_pool;
    for (const auto& f : found) {
        if (f.family) {
            if (std::find(family_pool.begin(), family_pool.end(), f.x) == family_pool.end())
                family_pool.push_back(f.x);
        } else if (std::find(out.isolated.begin(), out.isolated.end(), f.x) == out.isolated.end()) {
            out.isolated.push_back(f.x);
        }
    }
    if (family_pool.size() >= 2) {
        out.has_family = true;
        out.family_reps = {family_pool[0], family_pool[1]};
    } else if (!family_pool.empty()) {
        // a one-dimensional branch whose second representative failed cannot
        // happen for verified candidates; keep the single value as isolated
        if (std::find(out.isolated.begin(), out.isolated.end(), family_pool[0]) == out.isolated.end())
            out.isolated.push_back(family_pool[0]);
    }
    std::sort(out.isolated.begin(), out.isolated.end(),
              [](const RatFunc& x, const RatFunc& y) { return x.to_string() < y.to_string(); });
    if (!out.has_family && out.isolated.size() >= 3) {
        out.has_family = true;
        out.family_reps = {out.isolated[0], out.isolated[1]};
    }
    return out;
}

// ---------------------------------------------------------------------------
// pattern solutions and the zero/pole oracle

std::optional<RadicalPair> riccati_pattern_solutions(const QuatAlgebra& alg,
                                                     const DerivationSpec& spec,
                                                     const TowerPtr& tower, const RiccatiEq& eq) {
    if (!spec.a1.is_zero()) return std::nullopt;
    RatFunc b2;
    if (!spec.a2.is_zero() && spec.a3.is_zero()) b2 = alg.beta;
    else if (spec.a2.is_zero() && !spec.a3.is_zero()) b2 = -alg.beta;
    else return std::nullopt;

    // exact square root eta with eta^2 = b2: split b2 = r * m^2 and take the
    // root of the squarefree part in a quadratic step (merging when the
    // radicand is already present, e.g. with xi).
    SquareSplit sp = ratfunc_square_split(b2);
    RadicalPair out;
    TowerElem eta;
    if (sp.squarefree.is_one()) {
        out.tower = tower;
        out.extended = false;
        out.lift = [](const TowerElem& e) { return e; };
        eta = TowerElem::from_ratfunc(tower, sp.square);
    } else {
        std::string name = "eta";
        auto taken = [&](const std::string& s) {
            if (s == tower->base().var) return true;
            for (int i = 0; i < tower->height(); ++i)
                if (tower->step(i).name == s) return true;
            return false;
        };
        int suffix = 1;
        while (taken(name)) name = "eta" + std::to_string(++suffix);
        auto adj = Tower::adjoin_step(
            tower, TowerStep::radical(name, 2, TowerElem::from_ratfunc(tower, sp.squarefree)));
        out.tower = adj.tower;
        out.extended = !adj.merged || adj.tower != tower;
        out.lift = adj.lift;
        eta = adj.gen * TowerElem::from_ratfunc(adj.tower, sp.square);
    }
    RiccatiEq lifted{out.lift(eq.a0), out.lift(eq.a1c), out.lift(eq.a2c)};
    if (!lifted.is_solution(eta) || !lifted.is_solution(-eta)) return std::nullopt;
    if (eta.equals(-eta)) return std::nullopt;
    out.plus = eta;
    out.minus = -eta;
    return out;
}

ZeroPoleReport zeropole_oracle(const DiffBase& base, const RatFunc& f, int n) {
    if (!base.t_prime.is_polynomial() || base.t_prime.num().degree() > 2)
        throw CapabilityError("zeropole_oracle requires t' = q0 + q1 t + q2 t^2");
    const Poly& tp = base.t_prime.num();
    Rat q0 = tp.coeff(0), q1 = tp.coeff(1), q2 = tp.coeff(2);
    if (q2.is_zero()) throw CapabilityError("zeropole_oracle requires a genuinely quadratic t'");
    if (f.is_zero()) throw MathError("zeropole_oracle needs a nonzero f");

    // precondition: f' = n (q1/2 + q2 t) f under the given base derivation
    RatFunc lhs = f.derivative() * base.t_prime;
    RatFunc rate = RatFunc(Poly::from_coeffs({q1 / Rat(2), q2})) * RatFunc(Rat(static_cast<long>(n)));
    if (!(lhs == rate * f))
        throw MathError("zeropole_oracle precondition failed: f' != n(q1/2 + q2 t) f");

    ZeroPoleReport rep;
    auto visit = [&](const Poly& p, int sign) {
        if (p.degree() < 1) return;
        for (const Rat& g : rational_roots(p)) {
            Poly lin = Poly::from_coeffs({-g, Rat(1)});
            RatFunc probe(p, Poly(Rat(1)));
            int ord = probe.order_at(lin) * sign;
            bool ok = (q0 + q1 * g + q2 * g * g).is_zero();
            rep.entries.push_back({g, ord, ok});
            rep.all_pass = rep.all_pass && ok;
        }
    };
    visit(f.num(), 1);
    visit(f.den(), -1);
    return rep;
}

} // namespace diffquat
