#include "diffquat/tower.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "diffquat/decomp.hpp"

namespace diffquat {

using detail::Val;
using VPoly = std::vector<Val>;

namespace {

Val v_one(int level);

Val v_zero_at(int level) {
    Val v;
    if (level == 0) {
        v.rf = RatFunc();
        return v;
    }
    v.den.push_back(v_one(level - 1));
    return v;
}

Val v_one(int level) {
    Val v;
    if (level == 0) {
        v.rf = RatFunc(Rat(1));
        return v;
    }
    v.num.push_back(v_one(level - 1));
    v.den.push_back(v_one(level - 1));
    return v;
}

bool v_is_zero(const Val& v, int level) {
    if (level == 0) return v.rf.is_zero();
    return v.num.empty();
}

bool v_is_one(const Val& v, int level) {
    if (level == 0) return v.rf.is_one();
    return v.num.size() == 1 && v.den.size() == 1 && v_is_one(v.num[0], level - 1) &&
           v_is_one(v.den[0], level - 1);
}

Val v_promote(Val v, int from, int to) {
    for (int l = from; l < to; ++l) {
        Val w;
        w.num.push_back(std::move(v));
        w.den.push_back(v_one(l));
        if (v_is_zero(w.num[0], l)) w.num.clear();
        v = std::move(w);
    }
    return v;
}

// forward declarations for the mutually recursive value algebra
Val v_add(const Tower* nd, const Val& a, const Val& b);
Val v_mul(const Tower* nd, const Val& a, const Val& b);
Val v_inv(const Tower* nd, const Val& a);
Val v_neg(const Val& a, int level);
Val v_make(const Tower* nd, VPoly num, VPoly den);
Val v_derive(const Tower* nd, const Val& v);

Val v_sub(const Tower* nd, const Val& a, const Val& b) {
    return v_add(nd, a, v_neg(b, nd->height()));
}

Val v_div(const Tower* nd, const Val& a, const Val& b) { return v_mul(nd, a, v_inv(nd, b)); }

void vp_trim(VPoly& p, int clevel) {
    while (!p.empty() && v_is_zero(p.back(), clevel)) p.pop_back();
}

VPoly vp_add(const Tower* cn, const VPoly& a, const VPoly& b) {
    VPoly r = a;
    if (r.size() < b.size()) r.resize(b.size(), v_zero_at(cn->height()));
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = v_add(cn, r[i], b[i]);
    vp_trim(r, cn->height());
    return r;
}

VPoly vp_neg(const VPoly& a, int clevel) {
    VPoly r = a;
    for (auto& c : r) c = v_neg(c, clevel);
    return r;
}

VPoly vp_mul(const Tower* cn, const VPoly& a, const VPoly& b) {
    if (a.empty() || b.empty()) return {};
    VPoly r(a.size() + b.size() - 1, v_zero_at(cn->height()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (v_is_zero(a[i], cn->height())) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = v_add(cn, r[i + j], v_mul(cn, a[i], b[j]));
    }
    vp_trim(r, cn->height());
    return r;
}

VPoly vp_scale(const Tower* cn, const VPoly& a, const Val& c) {
    if (v_is_one(c, cn->height())) return a;
    VPoly r;
    r.reserve(a.size());
    for (const auto& x : a) r.push_back(v_mul(cn, x, c));
    vp_trim(r, cn->height());
    return r;
}

// quotient/remainder over the coefficient field one level down
std::pair<VPoly, VPoly> vp_divmod(const Tower* cn, VPoly a, const VPoly& b) {
    if (b.empty()) throw MathError("division by zero polynomial in tower");
    int db = static_cast<int>(b.size()) - 1;
    bool lb_one = v_is_one(b.back(), cn->height());
    Val lb_inv = lb_one ? Val{} : v_inv(cn, b.back());
    VPoly quo;
    vp_trim(a, cn->height());
    if (static_cast<int>(a.size()) - 1 >= db)
        quo.assign(a.size() - b.size() + 1, v_zero_at(cn->height()));
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        int k = static_cast<int>(a.size()) - 1 - db;
        Val q = lb_one ? a.back() : v_mul(cn, a.back(), lb_inv);
        quo[static_cast<std::size_t>(k)] = q;
        for (int i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(i + k)] =
                v_sub(cn, a[static_cast<std::size_t>(i + k)], v_mul(cn, q, b[static_cast<std::size_t>(i)]));
        vp_trim(a, cn->height());
    }
    vp_trim(quo, cn->height());
    return {quo, a};
}

VPoly vp_monic(const Tower* cn, VPoly a) {
    if (a.empty() || v_is_one(a.back(), cn->height())) return a;
    Val inv = v_inv(cn, a.back());
    return vp_scale(cn, a, inv);
}

VPoly vp_gcd(const Tower* cn, VPoly a, VPoly b) {
    vp_trim(a, cn->height());
    vp_trim(b, cn->height());
    while (!b.empty()) {
        VPoly r = vp_divmod(cn, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return vp_monic(cn, std::move(a));
}

void radical_reduce(const Tower* nd, VPoly& p) {
    const Tower* cn = nd->node(nd->height() - 1);
    int n = nd->step(nd->height() - 1).n;
    const Val& f = nd->radicand_val();
    while (static_cast<int>(p.size()) > n) {
        Val top = std::move(p.back());
        p.pop_back();
        std::size_t tgt = p.size() - static_cast<std::size_t>(n);
        p[tgt] = v_add(cn, p[tgt], v_mul(cn, top, f));
    }
    vp_trim(p, cn->height());
}

// inverse modulo theta^n - f via extended Euclid over the sub-field
VPoly radical_inv(const Tower* nd, const VPoly& a) {
    const Tower* cn = nd->node(nd->height() - 1);
    if (a.empty()) throw MathError("division by zero");
    int n = nd->step(nd->height() - 1).n;
    VPoly m(static_cast<std::size_t>(n) + 1, v_zero_at(cn->height()));
    m[0] = v_neg(nd->radicand_val(), cn->height());
    m[static_cast<std::size_t>(n)] = v_one(cn->height());
    VPoly r0 = m, r1 = a;
    VPoly s0, s1{v_one(cn->height())};
    while (!r1.empty()) {
        auto [q, r] = vp_divmod(cn, r0, r1);
        VPoly s2 = vp_add(cn, s0, vp_neg(vp_mul(cn, q, s1), cn->height()));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1)
        throw MathError("zero divisor in radical extension (reducible radical relation)");
    VPoly inv = vp_scale(cn, s0, v_inv(cn, r0[0]));
    radical_reduce(nd, inv);
    return inv;
}

bool is_radical_level(const Tower* nd) {
    return nd->height() > 0 && nd->step(nd->height() - 1).kind == StepKind::Radical;
}

Val v_make(const Tower* nd, VPoly num, VPoly den) {
    int h = nd->height();
    if (h == 0) throw MathError("internal: v_make at base level");
    const Tower* cn = nd->node(h - 1);
    vp_trim(num, cn->height());
    vp_trim(den, cn->height());
    if (den.empty()) throw MathError("division by zero");
    Val out;
    if (num.empty()) return v_zero_at(h);
    if (is_radical_level(nd)) {
        radical_reduce(nd, num);
        if (num.empty()) return v_zero_at(h);
        radical_reduce(nd, den);
        if (!(den.size() == 1 && v_is_one(den[0], cn->height()))) {
            VPoly inv = radical_inv(nd, den);
            num = vp_mul(cn, num, inv);
            radical_reduce(nd, num);
        }
        out.num = std::move(num);
        out.den.push_back(v_one(cn->height()));
        return out;
    }
    if (den.size() == 1) {
        if (!v_is_one(den[0], cn->height())) num = vp_scale(cn, num, v_inv(cn, den[0]));
        out.num = std::move(num);
        out.den.push_back(v_one(cn->height()));
        return out;
    }
    if (num.size() > 1) { // a degree-0 numerator is a unit over the coefficient field
        VPoly g = vp_gcd(cn, num, den);
        if (g.size() > 1) {
            num = vp_divmod(cn, num, g).first;
            den = vp_divmod(cn, den, g).first;
        }
    }
    if (!v_is_one(den.back(), cn->height())) {
        Val lci = v_inv(cn, den.back());
        num = vp_scale(cn, num, lci);
        den = vp_scale(cn, den, lci);
    }
    out.num = std::move(num);
    out.den = std::move(den);
    return out;
}

Val v_neg(const Val& a, int level) {
    Val r = a;
    if (level == 0) {
        r.rf = -r.rf;
        return r;
    }
    for (auto& c : r.num) c = v_neg(c, level - 1);
    return r;
}

Val v_add(const Tower* nd, const Val& a, const Val& b) {
    int h = nd->height();
    if (h == 0) {
        Val r;
        r.rf = a.rf + b.rf;
        return r;
    }
    const Tower* cn = nd->node(h - 1);
    bool da1 = a.den.size() == 1 && v_is_one(a.den[0], cn->height());
    bool db1 = b.den.size() == 1 && v_is_one(b.den[0], cn->height());
    if (da1 && db1) {
        VPoly s = vp_add(cn, a.num, b.num);
        return v_make(nd, std::move(s), {v_one(cn->height())});
    }
    VPoly num = vp_add(cn, vp_mul(cn, a.num, b.den), vp_mul(cn, b.num, a.den));
    VPoly den = vp_mul(cn, a.den, b.den);
    return v_make(nd, std::move(num), std::move(den));
}

Val v_mul(const Tower* nd, const Val& a, const Val& b) {
    int h = nd->height();
    if (h == 0) {
        Val r;
        r.rf = a.rf * b.rf;
        return r;
    }
    const Tower* cn = nd->node(h - 1);
    if (v_is_zero(a, h) || v_is_zero(b, h)) return v_zero_at(h);
    if (v_is_one(a, h)) return b;
    if (v_is_one(b, h)) return a;
    return v_make(nd, vp_mul(cn, a.num, b.num), vp_mul(cn, a.den, b.den));
}

Val v_inv(const Tower* nd, const Val& a) {
    int h = nd->height();
    if (h == 0) {
        Val r;
        r.rf = a.rf.inv();
        return r;
    }
    if (v_is_zero(a, h)) throw MathError("division by zero");
    return v_make(nd, a.den, a.num);
}

Val v_pow(const Tower* nd, Val a, int e) {
    int h = nd->height();
    if (e < 0) {
        a = v_inv(nd, a);
        e = -e;
    }
    Val r = v_one(h);
    while (e > 0) {
        if (e & 1) r = v_mul(nd, r, a);
        if (e >>= 1) a = v_mul(nd, a, a);
    }
    return r;
}

Val make_val_poly(const Tower* nd, VPoly p) {
    const Tower* cn = nd->node(nd->height() - 1);
    vp_trim(p, cn->height());
    Val v;
    if (p.empty()) return v_zero_at(nd->height());
    if (is_radical_level(nd)) radical_reduce(nd, p);
    v.num = std::move(p);
    v.den.push_back(v_one(cn->height()));
    return v;
}

Val v_derive(const Tower* nd, const Val& v) {
    int h = nd->height();
    if (h == 0) {
        Val r;
        r.rf = v.rf.derivative() * nd->base().t_prime;
        return r;
    }
    const Tower* cn = nd->node(h - 1);
    auto dpoly = [&](const VPoly& p) -> Val {
        VPoly dc;
        dc.reserve(p.size());
        for (const auto& c : p) dc.push_back(v_derive(cn, c));
        vp_trim(dc, cn->height());
        VPoly fp;
        if (p.size() > 1) {
            fp.reserve(p.size() - 1);
            for (std::size_t i = 1; i < p.size(); ++i) {
                Val lifted = v_promote(Val{RatFunc(Rat(static_cast<long>(i))), {}, {}}, 0, cn->height());
                fp.push_back(v_mul(cn, p[i], lifted));
            }
            vp_trim(fp, cn->height());
        }
        Val out = make_val_poly(nd, std::move(dc));
        if (!fp.empty())
            out = v_add(nd, out, v_mul(nd, make_val_poly(nd, std::move(fp)), nd->gen_deriv()));
        return out;
    };
    bool den_one = v.den.size() == 1 && v_is_one(v.den[0], cn->height());
    Val dn = dpoly(v.num);
    if (den_one) return dn;
    Val n_val;
    n_val.num = v.num;
    n_val.den = {v_one(cn->height())};
    Val d_val;
    d_val.num = v.den;
    d_val.den = {v_one(cn->height())};
    Val dd = dpoly(v.den);
    Val num = v_sub(nd, v_mul(nd, dn, d_val), v_mul(nd, n_val, dd));
    return v_div(nd, num, v_mul(nd, d_val, d_val));
}

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

bool string_atom(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    bool seen_slash = false, seen_caret = false;
    if (i >= s.size()) return false;
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
        for (std::size_t j = i; j < s.size(); ++j) {
            char c = s[j];
            if (std::isdigit(static_cast<unsigned char>(c))) continue;
            if (c == '/' && !seen_slash && j + 1 < s.size()) {
                seen_slash = true;
                continue;
            }
            return false;
        }
        return true;
    }
    if (s[0] == '-') return false;
    for (std::size_t j = 0; j < s.size(); ++j) {
        char c = s[j];
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') continue;
        if (c == '^' && !seen_caret && j + 1 < s.size()) {
            seen_caret = true;
            continue;
        }
        return false;
    }
    return true;
}

std::string v_to_string(const Tower* nd, const Val& v) {
    int h = nd->height();
    if (h == 0) return v.rf.to_string(nd->base().var);
    if (v.num.empty()) return "0";
    const Tower* cn = nd->node(h - 1);
    const std::string& gen = nd->step(h - 1).name;
    auto poly_str = [&](const VPoly& p) -> std::string {
        std::ostringstream os;
        bool first = true;
        for (std::size_t ip = p.size(); ip-- > 0;) {
            if (v_is_zero(p[ip], cn->height())) continue;
            std::string cs = v_to_string(cn, p[ip]);
            bool neg_atom = cs.size() > 1 && cs[0] == '-' && string_atom(cs);
            if (first) {
                if (neg_atom && ip > 0) {
                    os << "-";
                    cs = cs.substr(1);
                }
            } else {
                if (neg_atom) {
                    os << " - ";
                    cs = cs.substr(1);
                } else {
                    os << " + ";
                }
            }
            first = false;
            bool is_unit = cs == "1";
            if (ip == 0) {
                os << cs;
                continue;
            }
            if (!is_unit) {
                if (string_atom(cs)) os << cs << "*";
                else os << "(" << cs << ")*";
            }
            os << gen;
            if (ip > 1) os << "^" << ip;
        }
        if (first) return "0";
        return os.str();
    };
    bool den_one = v.den.size() == 1 && v.den[0] == v_one(cn->height());
    if (den_one) return poly_str(v.num);
    return "(" + poly_str(v.num) + ")/(" + poly_str(v.den) + ")";
}

Val remap_val(const Val& v, int level, int merge_level, int mult) {
    if (level < merge_level) return v;
    Val out;
    if (level == merge_level) {
        if (v.num.empty()) return v;
        out.num.assign((v.num.size() - 1) * static_cast<std::size_t>(mult) + 1,
                       v_zero_at(level - 1));
        for (std::size_t e = 0; e < v.num.size(); ++e) out.num[e * static_cast<std::size_t>(mult)] = v.num[e];
        vp_trim(out.num, level - 1);
        out.den = v.den; // radical level: den == [one]
        return out;
    }
    for (const auto& c : v.num) out.num.push_back(remap_val(c, level - 1, merge_level, mult));
    for (const auto& c : v.den) out.den.push_back(remap_val(c, level - 1, merge_level, mult));
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// TowerStep

TowerStep TowerStep::radical(std::string name, int n, TowerElem f) {
    TowerStep s;
    s.kind = StepKind::Radical;
    s.name = std::move(name);
    s.n = n;
    s.f = std::move(f);
    return s;
}

TowerStep TowerStep::primitive(std::string name, TowerElem w) {
    TowerStep s;
    s.kind = StepKind::Primitive;
    s.name = std::move(name);
    s.w = std::move(w);
    return s;
}

TowerStep TowerStep::hyperexp(std::string name, TowerElem w) {
    TowerStep s;
    s.kind = StepKind::HyperExp;
    s.name = std::move(name);
    s.w = std::move(w);
    return s;
}

TowerStep TowerStep::riccati_gen(std::string name, TowerElem a0, TowerElem a1, TowerElem a2) {
    TowerStep s;
    s.kind = StepKind::RiccatiGen;
    s.name = std::move(name);
    s.a0 = std::move(a0);
    s.a1 = std::move(a1);
    s.a2 = std::move(a2);
    return s;
}

// ---------------------------------------------------------------------------
// Tower

TowerPtr Tower::make_base(DiffBase base) {
    auto t = std::shared_ptr<Tower>(new Tower());
    t->base_ = std::move(base);
    t->height_ = 0;
    return t;
}

const TowerStep& Tower::step(int i) const {
    const Tower* n = node(i + 1);
    return *n->step_;
}

const Tower* Tower::node(int level) const {
    const Tower* cur = this;
    while (cur->height_ > level) cur = cur->parent_.get();
    if (cur->height_ != level) throw MathError("internal: bad tower level");
    return cur;
}

bool Tower::same(const Tower& other) const {
    if (height_ != other.height_) return false;
    return prefix_of(other);
}

bool Tower::prefix_of(const Tower& other) const {
    if (height_ > other.height_) return false;
    if (!(base_ == other.base_)) return false;
    for (int i = 0; i < height_; ++i) {
        const TowerStep& a = step(i);
        const TowerStep& b = other.step(i);
        if (a.kind != b.kind || a.name != b.name || a.n != b.n) return false;
        auto payload_eq = [](const TowerElem& x, const TowerElem& y) {
            if (x.valid() != y.valid()) return false;
            if (!x.valid()) return true;
            return x.val() == y.val();
        };
        if (!payload_eq(a.f, b.f) || !payload_eq(a.w, b.w) || !payload_eq(a.a0, b.a0) ||
            !payload_eq(a.a1, b.a1) || !payload_eq(a.a2, b.a2))
            return false;
    }
    return true;
}

int Tower::tr_degree() const {
    int d = 0;
    for (int i = 0; i < height_; ++i)
        if (step(i).kind != StepKind::Radical) ++d;
    return d;
}

std::shared_ptr<Tower> Tower::make_node(TowerPtr parent, TowerStep step) {
    auto t = std::shared_ptr<Tower>(new Tower());
    t->base_ = parent->base();
    t->height_ = parent->height() + 1;
    int h = t->height_;
    int ch = h - 1;

    // payloads live promoted at the parent height for canonical comparisons
    auto promote_payload = [&](TowerElem& e) {
        if (e.valid()) e = e.promoted(parent);
    };
    promote_payload(step.f);
    promote_payload(step.w);
    promote_payload(step.a0);
    promote_payload(step.a1);
    promote_payload(step.a2);

    t->parent_ = parent;
    t->step_ = step;

    switch (step.kind) {
        case StepKind::Radical: {
            t->radicand_ = step.f.val();
            TowerElem n_elem = TowerElem::from_rat(parent, Rat(static_cast<long>(step.n)));
            TowerElem c = step.f.derive() / (step.f * n_elem);
            Val gd;
            gd.num = {v_zero_at(ch), c.val()};
            vp_trim(gd.num, ch);
            gd.den = {v_one(ch)};
            t->gen_deriv_ = std::move(gd);
            break;
        }
        case StepKind::Primitive: {
            Val gd;
            gd.num = {step.w.val()};
            vp_trim(gd.num, ch);
            gd.den = {v_one(ch)};
            t->gen_deriv_ = std::move(gd);
            break;
        }
        case StepKind::HyperExp: {
            Val gd;
            gd.num = {v_zero_at(ch), step.w.val()};
            vp_trim(gd.num, ch);
            gd.den = {v_one(ch)};
            t->gen_deriv_ = std::move(gd);
            break;
        }
        case StepKind::RiccatiGen: {
            Val gd;
            gd.num = {step.a0.val(), step.a1.val(), step.a2.val()};
            vp_trim(gd.num, ch);
            gd.den = {v_one(ch)};
            t->gen_deriv_ = std::move(gd);
            break;
        }
    }
    return t;
}

Tower::Adjoined Tower::adjoin_step(const TowerPtr& tower, TowerStep step) {
    if (!valid_identifier(step.name)) throw MathError("invalid generator name: " + step.name);
    if (step.name == tower->base().var) throw MathError("generator name collides with the base variable");

    // radical merges reuse the merged generator's name, so the uniqueness
    // check happens after the merge scan
    auto check_unique_name = [&]() {
        for (int i = 0; i < tower->height(); ++i)
            if (tower->step(i).name == step.name)
                throw MathError("duplicate generator name: " + step.name);
    };

    auto check_payload = [&](const TowerElem& e, const char* what) {
        if (!e.valid()) throw MathError(std::string("missing step data: ") + what);
        if (!(e.tower() == tower) && !e.tower()->same(*tower) && !e.tower()->prefix_of(*tower))
            throw TowerMismatchError("step data from an unrelated tower");
    };

    if (step.kind == StepKind::Radical) {
        check_payload(step.f, "radicand");
        if (step.n < 2) throw MathError("radical index must be at least 2");
        if (step.f.is_zero()) throw MathError("zero radicand");

        TowerElem f_here = step.f.promoted(tower);
        for (int i = 0; i < tower->height(); ++i) {
            const TowerStep& ex = tower->step(i);
            if (ex.kind != StepKind::Radical) continue;
            TowerElem exf = ex.f.promoted(tower);
            if (!exf.equals(f_here)) continue;
            int m = ex.n;
            int big = std::lcm(m, step.n);
            if (big == m) {
                TowerElem gen = TowerElem::generator(tower, i).pow(m / step.n);
                return {tower, gen, true, [](const TowerElem& e) { return e; }};
            }
            // rebuild the chain with the merged index
            int mult = big / m;
            int merge_level = i + 1;
            TowerPtr cur = tower;
            while (cur->height() > i) cur = cur->parent_;
            TowerStep merged = ex;
            merged.n = big;
            cur = make_node(cur, merged);
            for (int j = i + 1; j < tower->height(); ++j) {
                TowerStep sj = tower->step(j);
                auto remap_payload = [&](TowerElem& e) {
                    if (!e.valid()) return;
                    Val nv = remap_val(e.val(), e.tower()->height(), merge_level, mult);
                    TowerPtr at = cur;
                    while (at->height() > e.tower()->height()) at = at->parent_;
                    e = TowerElem(at, std::move(nv));
                };
                remap_payload(sj.f);
                remap_payload(sj.w);
                remap_payload(sj.a0);
                remap_payload(sj.a1);
                remap_payload(sj.a2);
                cur = make_node(cur, sj);
            }
            TowerPtr old_full = tower;
            TowerPtr new_full = cur;
            auto lift = [old_full, new_full, merge_level, mult](const TowerElem& e) {
                if (!e.valid()) return e;
                if (!(e.tower() == old_full) && !e.tower()->same(*old_full) &&
                    !e.tower()->prefix_of(*old_full))
                    throw TowerMismatchError("cannot lift element from an unrelated tower");
                int he = e.tower()->height();
                if (he < merge_level) return e;
                Val nv = remap_val(e.val(), he, merge_level, mult);
                TowerPtr at = new_full;
                while (at->height() > he) at = at->parent_;
                return TowerElem(at, std::move(nv));
            };
            TowerElem gen = TowerElem::generator(new_full, i).pow(big / step.n);
            return {new_full, gen, true, lift};
        }
    } else if (step.kind == StepKind::Primitive || step.kind == StepKind::HyperExp) {
        check_payload(step.w, "rate");
    } else {
        check_payload(step.a0, "a0");
        check_payload(step.a1, "a1");
        check_payload(step.a2, "a2");
    }

    check_unique_name();
    TowerPtr node = make_node(tower, std::move(step));
    TowerElem gen = TowerElem::generator(node, node->height() - 1);
    auto lift = [node](const TowerElem& e) { return e.valid() ? e.promoted(node) : e; };
    return {node, gen, false, lift};
}

// ---------------------------------------------------------------------------
// TowerElem

TowerElem TowerElem::from_ratfunc(const TowerPtr& t, const RatFunc& f) {
    Val v;
    v.rf = f;
    return TowerElem(t, v_promote(std::move(v), 0, t->height()));
}

TowerElem TowerElem::from_rat(const TowerPtr& t, const Rat& c) {
    return from_ratfunc(t, RatFunc(c));
}

TowerElem TowerElem::generator(const TowerPtr& t, int step_index) {
    if (step_index < 0 || step_index >= t->height()) throw MathError("no such generator");
    Val v;
    v.num = {v_zero_at(step_index), v_one(step_index)};
    v.den = {v_one(step_index)};
    return TowerElem(t, v_promote(std::move(v), step_index + 1, t->height()));
}

namespace {
// common tower + values promoted to it
struct Aligned {
    TowerPtr tower;
    Val a, b;
};

Aligned align(const TowerElem& x, const TowerElem& y) {
    if (!x.valid() || !y.valid()) throw MathError("operation on an empty tower element");
    const TowerPtr& tx = x.tower();
    const TowerPtr& ty = y.tower();
    if (tx == ty || tx->same(*ty)) return {tx, x.val(), y.val()};
    if (tx->prefix_of(*ty)) return {ty, v_promote(x.val(), tx->height(), ty->height()), y.val()};
    if (ty->prefix_of(*tx)) return {tx, x.val(), v_promote(y.val(), ty->height(), tx->height())};
    throw TowerMismatchError("elements of unrelated towers");
}
} // namespace

TowerElem TowerElem::operator-() const {
    if (!valid()) throw MathError("operation on an empty tower element");
    return TowerElem(tower_, v_neg(val_, tower_->height()));
}

TowerElem operator+(const TowerElem& a, const TowerElem& b) {
    Aligned al = align(a, b);
    return TowerElem(al.tower, v_add(al.tower.get(), al.a, al.b));
}

TowerElem operator-(const TowerElem& a, const TowerElem& b) { return a + (-b); }

TowerElem operator*(const TowerElem& a, const TowerElem& b) {
    Aligned al = align(a, b);
    return TowerElem(al.tower, v_mul(al.tower.get(), al.a, al.b));
}

TowerElem operator/(const TowerElem& a, const TowerElem& b) {
    Aligned al = align(a, b);
    return TowerElem(al.tower, v_mul(al.tower.get(), al.a, v_inv(al.tower.get(), al.b)));
}

TowerElem TowerElem::inv() const {
    if (!valid()) throw MathError("operation on an empty tower element");
    return TowerElem(tower_, v_inv(tower_.get(), val_));
}

TowerElem TowerElem::pow(int e) const {
    if (!valid()) throw MathError("operation on an empty tower element");
    return TowerElem(tower_, v_pow(tower_.get(), val_, e));
}

TowerElem TowerElem::derive() const {
    if (!valid()) throw MathError("operation on an empty tower element");
    return TowerElem(tower_, v_derive(tower_.get(), val_));
}

bool TowerElem::is_zero() const {
    if (!valid()) throw MathError("operation on an empty tower element");
    return v_is_zero(val_, tower_->height());
}

bool TowerElem::is_one() const {
    if (!valid()) throw MathError("operation on an empty tower element");
    return val_ == v_one(tower_->height());
}

bool TowerElem::equals(const TowerElem& o) const {
    Aligned al = align(*this, o);
    return al.a == al.b;
}

std::optional<RatFunc> TowerElem::as_base() const {
    if (!valid()) return std::nullopt;
    const Val* cur = &val_;
    for (int h = tower_->height(); h > 0; --h) {
        if (!(cur->den.size() == 1 && cur->den[0] == v_one(h - 1))) return std::nullopt;
        if (cur->num.size() > 1) return std::nullopt;
        if (cur->num.empty()) return RatFunc();
        cur = &cur->num[0];
    }
    return cur->rf;
}

std::string TowerElem::to_string() const {
    if (!valid()) return "<empty>";
    return v_to_string(tower_.get(), val_);
}

TowerElem TowerElem::promoted(const TowerPtr& taller) const {
    if (!valid()) throw MathError("operation on an empty tower element");
    if (tower_ == taller || tower_->same(*taller)) return TowerElem(taller, val_);
    if (!tower_->prefix_of(*taller)) throw TowerMismatchError("promotion target is not an extension");
    return TowerElem(taller, v_promote(val_, tower_->height(), taller->height()));
}

// ---------------------------------------------------------------------------
// realize_radical

RealizedRadical realize_radical(const TowerPtr& tower, int n, const RatFunc& f,
                                const std::string& preferred_name) {
    if (n < 1 || f.is_zero()) throw MathError("radical solution needs n >= 1 and f != 0");
    auto identity = [](const TowerElem& e) { return e; };
    if (n == 1) return {tower, TowerElem::from_ratfunc(tower, f), false, identity};

    // in-field n-th root
    if (auto root = nth_root_ratfunc(f, n))
        return {tower, TowerElem::from_ratfunc(tower, *root), false, identity};

    // multiplicative relation with an existing base-field radicand: f = c * g^e
    for (int i = 0; i < tower->height(); ++i) {
        const TowerStep& st = tower->step(i);
        if (st.kind != StepKind::Radical) continue;
        auto g = st.f.as_base();
        if (!g || g->degree() == 0) continue;
        if (f.degree() == RatFunc::kZeroDegree) continue;
        int gd = g->degree();
        if (gd == 0 || f.degree() % gd != 0) continue;
        int e = f.degree() / gd;
        if (e == 0) continue;
        RatFunc ratio = f / g->pow(e);
        if (!ratio.is_constant()) continue;
        int m = st.n;
        int d = std::gcd(std::abs(e), n);
        int big = std::lcm(m, n / d);
        if (big == m) {
            long k = static_cast<long>(m) * e / n;
            TowerElem x = TowerElem::generator(tower, i).pow(static_cast<int>(k));
            return {tower, x, false, identity};
        }
        auto adj = Tower::adjoin_step(tower, TowerStep::radical(st.name, big, st.f));
        // adj.gen satisfies gen^big = g; the wanted solution is gen^(big*e/n)
        long k = static_cast<long>(big) * e / n;
        TowerElem base_gen = adj.gen; // == generator^ (big/big) of merged step
        TowerElem x = base_gen.pow(static_cast<int>(k));
        return {adj.tower, x, true, adj.lift};
    }

    // fresh radical step
    std::string name = preferred_name;
    auto taken = [&](const std::string& s) {
        if (s == tower->base().var) return true;
        for (int i = 0; i < tower->height(); ++i)
            if (tower->step(i).name == s) return true;
        return false;
    };
    int suffix = 1;
    while (taken(name)) name = preferred_name + std::to_string(++suffix);
    auto adj = Tower::adjoin_step(
        tower, TowerStep::radical(name, n, TowerElem::from_ratfunc(tower, f)));
    return {adj.tower, adj.gen, true, adj.lift};
}

} // namespace diffquat
