#include "diffquat/quat.hpp"

#include <sstream>

#include "diffquat/decomp.hpp"

namespace diffquat {

namespace {
TowerPtr common_tower(const TowerPtr& ta, const TowerPtr& tb) {
    if (ta == tb || ta->same(*tb)) return ta;
    if (ta->prefix_of(*tb)) return tb;
    if (tb->prefix_of(*ta)) return ta;
    throw TowerMismatchError("elements of unrelated towers");
}
TowerPtr common_tower(const TowerElem& a, const TowerElem& b) {
    return common_tower(a.tower(), b.tower());
}
} // namespace

QuatElem QuatElem::zero(const TowerPtr& t) {
    TowerElem z = TowerElem::from_rat(t, Rat(0));
    return {z, z, z, z};
}

QuatElem QuatElem::scalar(const TowerPtr& t, const RatFunc& s) {
    QuatElem q = zero(t);
    q.c0 = TowerElem::from_ratfunc(t, s);
    return q;
}

QuatElem QuatElem::unit_u(const TowerPtr& t) {
    QuatElem q = zero(t);
    q.c1 = TowerElem::from_rat(t, Rat(1));
    return q;
}

QuatElem QuatElem::unit_v(const TowerPtr& t) {
    QuatElem q = zero(t);
    q.c2 = TowerElem::from_rat(t, Rat(1));
    return q;
}

QuatElem QuatElem::unit_uv(const TowerPtr& t) {
    QuatElem q = zero(t);
    q.c3 = TowerElem::from_rat(t, Rat(1));
    return q;
}

QuatElem QuatElem::operator-() const { return {-c0, -c1, -c2, -c3}; }

QuatElem operator+(const QuatElem& a, const QuatElem& b) {
    return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2, a.c3 + b.c3};
}

QuatElem operator-(const QuatElem& a, const QuatElem& b) { return a + (-b); }

bool QuatElem::equals(const QuatElem& o) const {
    return c0.equals(o.c0) && c1.equals(o.c1) && c2.equals(o.c2) && c3.equals(o.c3);
}

bool QuatElem::is_zero() const {
    return c0.is_zero() && c1.is_zero() && c2.is_zero() && c3.is_zero();
}

std::string QuatElem::to_string() const {
    std::ostringstream os;
    os << "(" << c0.to_string() << ") + (" << c1.to_string() << ")*u + (" << c2.to_string()
       << ")*v + (" << c3.to_string() << ")*uv";
    return os.str();
}

QuatElem quat_mul(const QuatAlgebra& alg, const QuatElem& x, const QuatElem& y) {
    TowerPtr t = common_tower(common_tower(x.c0, x.c1), common_tower(y.c0, y.c3));
    TowerElem a = TowerElem::from_ratfunc(t, alg.alpha);
    TowerElem b = TowerElem::from_ratfunc(t, alg.beta);
    const TowerElem &x0 = x.c0, &x1 = x.c1, &x2 = x.c2, &x3 = x.c3;
    const TowerElem &y0 = y.c0, &y1 = y.c1, &y2 = y.c2, &y3 = y.c3;
    // (x0 + x1 u + x2 v + x3 uv)(y0 + y1 u + y2 v + y3 uv) with
    // u^2 = alpha, v^2 = beta, vu = -uv, (uv)^2 = -alpha beta,
    // u(uv) = alpha v, (uv)u = -alpha v, v(uv) = -beta u, (uv)v = beta u.
    QuatElem r;
    r.c0 = x0 * y0 + a * (x1 * y1) + b * (x2 * y2) - a * b * (x3 * y3);
    r.c1 = x0 * y1 + x1 * y0 - b * (x2 * y3) + b * (x3 * y2);
    r.c2 = x0 * y2 + x2 * y0 + a * (x1 * y3) - a * (x3 * y1);
    r.c3 = x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1;
    return r;
}

QuatElem quat_conj(const QuatElem& x) { return {x.c0, -x.c1, -x.c2, -x.c3}; }

NormConj quat_norm_conj(const QuatAlgebra& alg, const QuatElem& x) {
    TowerPtr t = common_tower(x.c0, x.c3);
    TowerElem a = TowerElem::from_ratfunc(t, alg.alpha);
    TowerElem b = TowerElem::from_ratfunc(t, alg.beta);
    TowerElem norm = x.c0 * x.c0 - a * (x.c1 * x.c1) - b * (x.c2 * x.c2) + a * b * (x.c3 * x.c3);
    return {norm, quat_conj(x)};
}

QuatElem apply_derivation(const QuatAlgebra& alg, const DerivationSpec& spec, const QuatElem& x) {
    TowerPtr t = common_tower(x.c0, x.c3);
    TowerElem a = TowerElem::from_ratfunc(t, alg.alpha);
    TowerElem b = TowerElem::from_ratfunc(t, alg.beta);
    TowerElem two = TowerElem::from_rat(t, Rat(2));
    TowerElem du_rate = a.derive() / (two * a); // alpha'/(2 alpha)
    TowerElem dv_rate = b.derive() / (two * b);

    QuatElem r;
    r.c0 = x.c0.derive();
    r.c1 = x.c1.derive() + du_rate * x.c1;
    r.c2 = x.c2.derive() + dv_rate * x.c2;
    r.c3 = x.c3.derive() + (du_rate + dv_rate) * x.c3;

    if (!spec.is_zero()) {
        QuatElem theta = QuatElem::zero(t);
        theta.c1 = TowerElem::from_ratfunc(t, spec.a1);
        theta.c2 = TowerElem::from_ratfunc(t, spec.a2);
        theta.c3 = TowerElem::from_ratfunc(t, spec.a3);
        r = r + (quat_mul(alg, x, theta) - quat_mul(alg, theta, x));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Mat2

Mat2 Mat2::identity(const TowerPtr& t) {
    TowerElem z = TowerElem::from_rat(t, Rat(0));
    TowerElem o = TowerElem::from_rat(t, Rat(1));
    return {{o, z, z, o}};
}

Mat2 Mat2::zero(const TowerPtr& t) {
    TowerElem z = TowerElem::from_rat(t, Rat(0));
    return {{z, z, z, z}};
}

Mat2 Mat2::diag(const TowerElem& a, const TowerElem& d) {
    TowerElem z = TowerElem::from_rat(a.tower(), Rat(0));
    return {{a, z, z, d}};
}

Mat2 Mat2::of(TowerElem a, TowerElem b, TowerElem c, TowerElem d) {
    return {{std::move(a), std::move(b), std::move(c), std::move(d)}};
}

Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {{x.e[0] + y.e[0], x.e[1] + y.e[1], x.e[2] + y.e[2], x.e[3] + y.e[3]}};
}

Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {{x.e[0] - y.e[0], x.e[1] - y.e[1], x.e[2] - y.e[2], x.e[3] - y.e[3]}};
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {{x.e[0] * y.e[0] + x.e[1] * y.e[2], x.e[0] * y.e[1] + x.e[1] * y.e[3],
             x.e[2] * y.e[0] + x.e[3] * y.e[2], x.e[2] * y.e[1] + x.e[3] * y.e[3]}};
}

Mat2 Mat2::scaled(const TowerElem& s) const {
    return {{e[0] * s, e[1] * s, e[2] * s, e[3] * s}};
}

Mat2 Mat2::derive() const { return {{e[0].derive(), e[1].derive(), e[2].derive(), e[3].derive()}}; }

TowerElem Mat2::det() const { return e[0] * e[3] - e[1] * e[2]; }

TowerElem Mat2::trace() const { return e[0] + e[3]; }

Mat2 Mat2::inverse() const {
    TowerElem d = det();
    if (d.is_zero()) throw MathError("singular matrix");
    TowerElem di = d.inv();
    return {{e[3] * di, -(e[1] * di), -(e[2] * di), e[0] * di}};
}

bool Mat2::equals(const Mat2& o) const {
    for (int i = 0; i < 4; ++i)
        if (!e[i].equals(o.e[i])) return false;
    return true;
}

bool Mat2::is_zero() const {
    for (int i = 0; i < 4; ++i)
        if (!e[i].is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------

namespace {
void check_xi(const QuatAlgebra& alg, const TowerElem& xi) {
    TowerElem a = TowerElem::from_ratfunc(xi.tower(), alg.alpha);
    if (!(xi * xi).equals(a)) throw MathError("xi^2 != alpha in the given tower");
}
} // namespace

Mat2 phi_map(const QuatAlgebra& alg, const TowerElem& xi, const QuatElem& x) {
    check_xi(alg, xi);
    TowerPtr t = common_tower(xi.tower(), common_tower(x.c0, x.c3));
    TowerElem xit = xi.promoted(t);
    TowerElem b = TowerElem::from_ratfunc(t, alg.beta);
    TowerElem c0 = x.c0.promoted(t), c1 = x.c1.promoted(t), c2 = x.c2.promoted(t),
              c3 = x.c3.promoted(t);
    // c0 I + c1 diag(xi,-xi) + c2 [[0,b],[1,0]] + c3 [[0, xi b],[-xi, 0]]
    return Mat2::of(c0 + c1 * xit, (c2 + c3 * xit) * b, c2 - c3 * xit, c0 - c1 * xit);
}

Mat2 build_P(const QuatAlgebra& alg, const DerivationSpec& spec, const TowerElem& xi) {
    check_xi(alg, xi);
    const TowerPtr& t = xi.tower();
    TowerElem b = TowerElem::from_ratfunc(t, alg.beta);
    TowerElem a1 = TowerElem::from_ratfunc(t, spec.a1);
    TowerElem a2 = TowerElem::from_ratfunc(t, spec.a2);
    TowerElem a3 = TowerElem::from_ratfunc(t, spec.a3);
    TowerElem four = TowerElem::from_rat(t, Rat(4));
    TowerElem corner = a1 * xi + b.derive() / (four * b);
    return Mat2::of(corner, (a2 + a3 * xi) * b, a2 - a3 * xi, -corner);
}

RiccatiEq build_riccati(const QuatAlgebra& alg, const DerivationSpec& spec, const TowerElem& xi) {
    Mat2 p = build_P(alg, spec, xi);
    RiccatiEq eq;
    eq.a0 = p.e[1];                                    // (a2 + a3 xi) beta
    eq.a1c = p.e[0] + p.e[0];                          // 2 (a1 xi + beta'/(4 beta))
    eq.a2c = -p.e[2];                                  // -(a2 - a3 xi)
    return eq;
}

bool RiccatiEq::is_solution(const TowerElem& x) const {
    TowerElem rhs = a0 + a1c * x + a2c * (x * x);
    return x.derive().equals(rhs);
}

std::string RiccatiEq::to_string() const {
    std::ostringstream os;
    os << "X' = ";
    bool lead = true;
    auto emit = [&](const TowerElem& c, const char* power) {
        if (c.is_zero()) return;
        std::string s = c.to_string();
        bool neg = s.size() > 1 && s[0] == '-';
        std::string abs_s = neg ? s.substr(1) : s;
        if (lead) {
            if (neg) os << "-";
            lead = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        bool unit = abs_s == "1";
        if (*power == '\0') {
            os << abs_s;
            return;
        }
        if (!unit) {
            bool atom = abs_s.find_first_of("+-*/^ ()") == std::string::npos;
            os << (atom ? abs_s : "(" + abs_s + ")") << "*";
        }
        os << power;
    };
    emit(a2c, "X^2");
    emit(a1c, "X");
    emit(a0, "");
    if (lead) os << "0";
    return os.str();
}

TowerElem build_mu_rate(const QuatAlgebra& alg, const DerivationSpec& spec, const TowerElem& xi,
                        const TowerElem& lambda1) {
    RiccatiEq eq = build_riccati(alg, spec, xi);
    TowerPtr t = common_tower(xi, lambda1);
    TowerElem l1 = lambda1.promoted(t);
    RiccatiEq eq_t{eq.a0.promoted(t), eq.a1c.promoted(t), eq.a2c.promoted(t)};
    if (!eq_t.is_solution(l1))
        throw MathError("lambda1 does not solve the splitting Riccati equation");
    TowerElem b = TowerElem::from_ratfunc(t, alg.beta);
    TowerElem a1 = TowerElem::from_ratfunc(t, spec.a1);
    TowerElem a2 = TowerElem::from_ratfunc(t, spec.a2);
    TowerElem a3 = TowerElem::from_ratfunc(t, spec.a3);
    TowerElem four = TowerElem::from_rat(t, Rat(4));
    TowerElem xit = xi.promoted(t);
    return (a2 - a3 * xit) * l1 - (a1 * xit + b.derive() / (four * b));
}

XiResolution resolve_xi(const QuatAlgebra& alg, const TowerPtr& tower, const std::string& name) {
    if (auto root = sqrt_ratfunc(alg.alpha))
        return {tower, TowerElem::from_ratfunc(tower, *root), false};
    auto adj = Tower::adjoin_step(tower,
                                  TowerStep::radical(name, 2, TowerElem::from_ratfunc(tower, alg.alpha)));
    return {adj.tower, adj.gen, !adj.merged};
}

} // namespace diffquat
