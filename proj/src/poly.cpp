#include "diffquat/poly.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace diffquat {

Poly::Poly(const Rat& constant) {
    if (!constant.is_zero()) c_.push_back(constant);
}

Poly Poly::from_coeffs(std::vector<Rat> coeffs) {
    Poly p;
    p.c_ = std::move(coeffs);
    p.trim();
    return p;
}

Poly Poly::var() { return monomial(Rat(1), 1); }

Poly Poly::monomial(const Rat& c, int e) {
    Poly p;
    if (!c.is_zero()) {
        p.c_.assign(static_cast<std::size_t>(e) + 1, Rat(0));
        p.c_[static_cast<std::size_t>(e)] = c;
    }
    return p;
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
    r.trim();
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
}

Poly Poly::operator*(const Rat& s) const {
    if (s.is_zero()) return Poly();
    Poly r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw MathError("division by zero polynomial");
    Poly rem = a;
    Poly quo;
    int db = b.degree();
    Rat lb_inv = b.lc().inv();
    if (rem.degree() >= db) quo.c_.assign(static_cast<std::size_t>(rem.degree() - db) + 1, Rat(0));
    while (!rem.is_zero() && rem.degree() >= db) {
        int k = rem.degree() - db;
        Rat q = rem.lc() * lb_inv;
        quo.c_[static_cast<std::size_t>(k)] = q;
        for (int i = 0; i <= db; ++i)
            rem.c_[static_cast<std::size_t>(i + k)] -= q * b.c_[static_cast<std::size_t>(i)];
        rem.trim();
    }
    quo.trim();
    return {quo, rem};
}

Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw MathError("inexact polynomial division");
    return q;
}

Poly Poly::derivative() const {
    Poly r;
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * Rat(static_cast<long>(i));
    r.trim();
    return r;
}

Rat Poly::eval(const Rat& x) const {
    Rat acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Poly Poly::monic() const {
    if (is_zero()) return Poly();
    return *this * lc().inv();
}

Poly Poly::pow(int e) const {
    if (e < 0) throw MathError("negative polynomial power");
    Poly r(Rat(1));
    Poly base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

Rat Poly::content() const {
    if (is_zero()) return Rat(1);
    mpz_class num_gcd(0), den_lcm(1);
    for (const auto& c : c_) {
        if (c.is_zero()) continue;
        num_gcd = gcd_z(num_gcd, c.num());
        den_lcm = lcm_z(den_lcm, c.den());
    }
    return Rat(num_gcd, den_lcm);
}

Poly Poly::shift(const Rat& a) const {
    // Horner: p(t + a) built from the top coefficient down.
    Poly r;
    Poly lin = Poly::from_coeffs({a, Rat(1)});
    for (std::size_t i = c_.size(); i-- > 0;) r = r * lin + Poly(c_[i]);
    return r;
}

namespace {

// Integer-coefficient view used by the primitive Euclidean remainder sequence.
std::vector<mpz_class> to_primitive_int(const Poly& p) {
    std::vector<mpz_class> v(p.coeffs().size());
    Rat c = p.content();
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat q = p.coeffs()[i] / c;
        v[i] = q.num(); // den is 1 after content removal
    }
    return v;
}

void strip_content(std::vector<mpz_class>& v) {
    mpz_class g(0);
    for (const auto& c : v) g = gcd_z(g, c);
    if (g == 0 || g == 1) return;
    for (auto& c : v) c /= g;
}

void trim_int(std::vector<mpz_class>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

// Pseudo-remainder of integer polynomials: lc(b)^(da-db+1) * a mod b.
std::vector<mpz_class> pseudo_rem(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
    int da = static_cast<int>(a.size()) - 1;
    int db = static_cast<int>(b.size()) - 1;
    const mpz_class& lb = b.back();
    for (int k = da - db; k >= 0; --k) {
        if (static_cast<int>(a.size()) - 1 < db + k) continue;
        mpz_class top = a[static_cast<std::size_t>(db + k)];
        for (auto& c : a) c *= lb;
        for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + k)] -= top * b[static_cast<std::size_t>(i)];
        trim_int(a);
    }
    return a;
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.degree() == 0 || b.degree() == 0) return Poly(Rat(1));
    std::vector<mpz_class> u = to_primitive_int(a);
    std::vector<mpz_class> v = to_primitive_int(b);
    if (u.size() < v.size()) std::swap(u, v);
    while (!v.empty()) {
        std::vector<mpz_class> r = pseudo_rem(u, v);
        strip_content(r);
        u = std::move(v);
        v = std::move(r);
    }
    std::vector<Rat> coeffs(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) coeffs[i] = Rat(u[i]);
    return Poly::from_coeffs(std::move(coeffs)).monic();
}

ExtGcd poly_ext_gcd(const Poly& a, const Poly& b) {
    // Monic extended Euclid over Q; inputs here are small, growth is acceptable.
    Poly r0 = a, r1 = b;
    Poly s0(Rat(1)), s1;
    Poly t0, t1(Rat(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        Poly s2 = s0 - q * s1;
        Poly t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.is_zero()) return {Poly(), Poly(), Poly()};
    Rat l = r0.lc().inv();
    return {r0 * l, s0 * l, t0 * l};
}

Rat resultant(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Rat(0);
    Poly f = a, g = b;
    Rat acc(1);
    bool negate = false;
    while (g.degree() > 0) {
        Poly r = divmod(f, g).second;
        if (r.is_zero()) return Rat(0);
        // res(f, g) = (-1)^(df*dg) lc(g)^(df-dr) res(g, r)
        if ((f.degree() % 2) && (g.degree() % 2)) negate = !negate;
        acc *= g.lc().pow(f.degree() - r.degree());
        f = std::move(g);
        g = std::move(r);
    }
    acc *= g.lc().pow(f.degree());
    return negate ? -acc : acc;
}

Poly interpolate(const std::vector<std::pair<Rat, Rat>>& points) {
    // Newton form with divided differences.
    std::size_t n = points.size();
    std::vector<Rat> dd(n);
    for (std::size_t i = 0; i < n; ++i) dd[i] = points[i].second;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n; i-- > level;)
            dd[i] = (dd[i] - dd[i - 1]) / (points[i].first - points[i - level].first);
    Poly r;
    for (std::size_t i = n; i-- > 0;) {
        Poly lin = Poly::from_coeffs({-points[i].first, Rat(1)});
        r = r * lin + Poly(dd[i]);
    }
    return r;
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Rat c = coeff(i);
        if (c.is_zero()) continue;
        bool neg = c.sign() < 0;
        Rat a = c.abs();
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        std::string coeff_str;
        if (a.is_integer()) coeff_str = a.to_string();
        else coeff_str = "(" + a.to_string() + ")";
        if (i == 0) {
            os << a.to_string();
        } else {
            if (!a.is_one()) os << coeff_str << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

} // namespace diffquat
