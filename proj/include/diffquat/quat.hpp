#pragma once

#include <array>

#include "diffquat/tower.hpp"

namespace diffquat {

// Quaternion algebra (alpha, beta)_k over the base differential field, with
// generators u, v satisfying u^2 = alpha, v^2 = beta, vu = -uv.
struct QuatAlgebra {
    RatFunc alpha;
    RatFunc beta;
    DiffBase base;

    QuatAlgebra(RatFunc a, RatFunc b, DiffBase bs = DiffBase{})
        : alpha(std::move(a)), beta(std::move(b)), base(std::move(bs)) {
        if (alpha.is_zero() || beta.is_zero())
            throw MathError("quaternion algebra requires nonzero alpha and beta");
    }
};

// Coordinates on the basis 1, u, v, uv, over a differential tower.
struct QuatElem {
    TowerElem c0, c1, c2, c3;

    static QuatElem zero(const TowerPtr& t);
    static QuatElem scalar(const TowerPtr& t, const RatFunc& s);
    static QuatElem unit_u(const TowerPtr& t);
    static QuatElem unit_v(const TowerPtr& t);
    static QuatElem unit_uv(const TowerPtr& t);

    QuatElem operator-() const;
    friend QuatElem operator+(const QuatElem& a, const QuatElem& b);
    friend QuatElem operator-(const QuatElem& a, const QuatElem& b);
    bool equals(const QuatElem& o) const;
    bool is_zero() const;
    std::string to_string() const;
};

// Inner-derivation data: d = d_(u,v) + ad(theta) with
// theta = a1 u + a2 v + a3 uv, coefficients in the base field.
struct DerivationSpec {
    RatFunc a1, a2, a3;
    bool is_zero() const { return a1.is_zero() && a2.is_zero() && a3.is_zero(); }
};

// X' = a0 + a1c X + a2c X^2 with coefficients over a tower.
struct RiccatiEq {
    TowerElem a0, a1c, a2c;
    // exact substitution check
    bool is_solution(const TowerElem& x) const;
    std::string to_string() const;
};

QuatElem quat_mul(const QuatAlgebra& alg, const QuatElem& x, const QuatElem& y);
QuatElem quat_conj(const QuatElem& x);

struct NormConj {
    TowerElem norm;
    QuatElem conj;
};
NormConj quat_norm_conj(const QuatAlgebra& alg, const QuatElem& x);

// d(x) for d = d_(u,v) + ad(theta): d(u) = (alpha'/2alpha) u,
// d(v) = (beta'/2beta) v, extended by Leibniz, plus x theta - theta x.
QuatElem apply_derivation(const QuatAlgebra& alg, const DerivationSpec& spec, const QuatElem& x);

// 2x2 matrices over a tower.
struct Mat2 {
    std::array<TowerElem, 4> e; // row-major: e[0] e[1] / e[2] e[3]

    static Mat2 identity(const TowerPtr& t);
    static Mat2 zero(const TowerPtr& t);
    static Mat2 diag(const TowerElem& a, const TowerElem& d);
    static Mat2 of(TowerElem a, TowerElem b, TowerElem c, TowerElem d);

    friend Mat2 operator+(const Mat2& x, const Mat2& y);
    friend Mat2 operator-(const Mat2& x, const Mat2& y);
    friend Mat2 operator*(const Mat2& x, const Mat2& y);
    Mat2 scaled(const TowerElem& s) const;
    Mat2 derive() const;        // entrywise derivation
    TowerElem det() const;
    TowerElem trace() const;
    Mat2 inverse() const;       // throws on zero determinant
    bool equals(const Mat2& o) const;
    bool is_zero() const;
};

// Image of x under u -> diag(xi, -xi), v -> [[0, beta],[1, 0]]; requires
// xi^2 = alpha in the tower.
Mat2 phi_map(const QuatAlgebra& alg, const TowerElem& xi, const QuatElem& x);

// The trace-zero matrix P with d_P = ' + (M -> M P - P M) matching the
// derivation on the algebra through phi:
//   [[ a1 xi + beta'/(4 beta), (a2 + a3 xi) beta ],
//    [ a2 - a3 xi,            -a1 xi - beta'/(4 beta) ]]
Mat2 build_P(const QuatAlgebra& alg, const DerivationSpec& spec, const TowerElem& xi);

// The splitting Riccati equation
//   X' = (a2 + a3 xi) beta + 2 (a1 xi + beta'/(4 beta)) X - (a2 - a3 xi) X^2.
RiccatiEq build_riccati(const QuatAlgebra& alg, const DerivationSpec& spec, const TowerElem& xi);

// Hyperexponential rate (a2 - a3 xi) lambda1 - (a1 xi + beta'/(4 beta));
// lambda1 must solve the splitting Riccati (checked by substitution).
TowerElem build_mu_rate(const QuatAlgebra& alg, const DerivationSpec& spec, const TowerElem& xi,
                        const TowerElem& lambda1);

// xi with xi^2 = alpha: in-field when alpha is a square in Q(t) (positive
// leading numerator coefficient), otherwise a fresh quadratic radical step.
struct XiResolution {
    TowerPtr tower;
    TowerElem xi;
    bool adjoined = false;
};
XiResolution resolve_xi(const QuatAlgebra& alg, const TowerPtr& tower,
                        const std::string& name = "xi");

} // namespace diffquat
