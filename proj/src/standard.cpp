#include "diffquat/standard.hpp"

#include <sstream>

namespace diffquat {

namespace {

QuatElem quat_scale(const QuatElem& x, const TowerElem& s) {
    return {x.c0 * s, x.c1 * s, x.c2 * s, x.c3 * s};
}

// d(x) = rho * x with rho = (x^2)'/(2 x^2) for a trace-zero eigen element
bool verify_eigen(const QuatAlgebra& alg, const DerivationSpec& spec, const QuatElem& x,
                  const TowerPtr& tower) {
    QuatElem sq = quat_mul(alg, x, x);
    if (!sq.c1.is_zero() || !sq.c2.is_zero() || !sq.c3.is_zero()) return false;
    if (sq.c0.is_zero()) return false;
    TowerElem rho = sq.c0.derive() / (TowerElem::from_rat(tower, Rat(2)) * sq.c0);
    QuatElem dx = apply_derivation(alg, spec, x);
    return dx.equals(quat_scale(x, rho));
}

bool anticommute(const QuatAlgebra& alg, const QuatElem& x, const QuatElem& y) {
    return (quat_mul(alg, x, y) + quat_mul(alg, y, x)).is_zero();
}

} // namespace

StandardReport standard_analyze(const QuatAlgebra& alg, const DerivationSpec& spec,
                                const EngineOptions& opt) {
    StandardReport rep;
    if (!(alg.base.t_prime == RatFunc(Rat(1))))
        throw CapabilityError("standard_analyze supports only the base derivation t' = 1");
    auto tower = Tower::make_base(alg.base);
    QuatElem u = QuatElem::unit_u(tower);
    QuatElem v = QuatElem::unit_v(tower);
    QuatElem uv = QuatElem::unit_uv(tower);

    if (spec.is_zero()) {
        rep.status = StandardReport::Status::Standard;
        rep.pair = {u, v};
        rep.eigen_elements = {u, v, uv};
        rep.detail = "zero inner part: d is the standard derivation of the pair (u, v)";
        return rep;
    }

    int nonzero = (!spec.a1.is_zero()) + (!spec.a2.is_zero()) + (!spec.a3.is_zero());
    if (nonzero > 1) {
        rep.status = StandardReport::Status::Inconclusive;
        rep.detail = "eigen-element case analysis covers inner parts along a single generator";
        return rep;
    }

    // rotate so the inner part lies along the first generator of a standard pair
    QuatElem w1 = u, w2 = v;
    RatFunc at = alg.alpha, bt = alg.beta, b = spec.a1;
    if (!spec.a2.is_zero()) {
        w1 = v;
        w2 = u;
        at = alg.beta;
        bt = alg.alpha;
        b = spec.a2;
    } else if (!spec.a3.is_zero()) {
        w1 = uv;
        w2 = v;
        at = -(alg.alpha * alg.beta);
        bt = alg.beta;
        b = spec.a3;
    }
    QuatElem w3 = quat_mul(alg, w1, w2);

    std::vector<QuatElem> eigen{w1};
    bool inconclusive = false;
    std::ostringstream detail;

    // ratio X = a2/a3 of an eigen element a1 w1 + a2 w2 + a3 w3 solves
    // X' = (at'/2at) X + 2 b (at - X^2)
    RiccatiRatCoeffs ratio_eq{RatFunc(Rat(2)) * b * at, at.derivative() / at / RatFunc(Rat(2)),
                              RatFunc(Rat(-2)) * b};
    RiccatiSolutionSet rs = riccati_rational_solutions(alg.base, ratio_eq, opt.budget);
    if (rs.status != SolveStatus::Complete) {
        inconclusive = true;
        detail << "ratio Riccati search incomplete; ";
    }
    std::vector<RatFunc> ratios = rs.all_rational();
    detail << "ratio equation solutions: " << (ratios.empty() ? "none" : "");
    for (std::size_t i = 0; i < ratios.size(); ++i)
        detail << (i ? ", " : "") << ratios[i].to_string();
    detail << "; ";

    for (const RatFunc& x0 : ratios) {
        TowerElem x0e = TowerElem::from_ratfunc(tower, x0);
        // candidate without a w1 component
        QuatElem cand = quat_scale(w2, x0e) + w3;
        if (verify_eigen(alg, spec, cand, tower)) {
            eigen.push_back(cand);
        }
        // candidate with a w1 component: a1/a2 solves Y' = rate Y
        if (!x0.is_zero()) {
            RatFunc rate = bt.derivative() / bt / RatFunc(Rat(2)) -
                           at.derivative() / at / RatFunc(Rat(2)) -
                           RatFunc(Rat(2)) * at * b / x0;
            auto ld = logderiv_multiple(alg.base, rate);
            if (ld && ld->n == 1) {
                TowerElem w_elem = TowerElem::from_ratfunc(tower, ld->f * x0);
                QuatElem cand2 = quat_scale(w1, w_elem) + quat_scale(w2, x0e) + w3;
                if (verify_eigen(alg, spec, cand2, tower)) eigen.push_back(cand2);
            } else if (ld && ld->n > 1) {
                detail << "a1-component would need a radical of index " << ld->n << "; ";
            }
        }
    }

    rep.eigen_elements = eigen;
    for (std::size_t i = 0; i < eigen.size(); ++i) {
        for (std::size_t j = 0; j < eigen.size(); ++j) {
            if (i == j) continue;
            if (!anticommute(alg, eigen[i], eigen[j])) continue;
            rep.status = StandardReport::Status::Standard;
            rep.pair = {eigen[i], eigen[j]};
            rep.detail = detail.str() + "anticommuting eigen pair found";
            return rep;
        }
    }

    if (inconclusive) {
        rep.status = StandardReport::Status::Inconclusive;
        rep.detail = detail.str() + "no pair found within the solver restrictions";
    } else {
        rep.status = StandardReport::Status::NotStandard;
        rep.detail = detail.str() +
                     "every eigen element with nonzero square lies on the inner-part generator";
    }
    return rep;
}

} // namespace diffquat
