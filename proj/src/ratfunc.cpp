#include "diffquat/ratfunc.hpp"

#include <ostream>
#include <sstream>

namespace diffquat {

RatFunc::RatFunc(Poly num, Poly den) {
    if (den.is_zero()) throw MathError("rational function with zero denominator");
    if (num.is_zero()) {
        num_ = Poly();
        den_ = Poly(Rat(1));
        return;
    }
    Poly g = poly_gcd(num, den);
    if (g.degree() > 0) {
        num = exact_div(num, g);
        den = exact_div(den, g);
    }
    Rat l = den.lc().inv();
    num_ = num * l;
    den_ = den * l;
}

std::optional<Rat> RatFunc::as_constant() const {
    if (!is_constant()) return std::nullopt;
    return num_.coeff(0);
}

RatFunc RatFunc::operator-() const {
    RatFunc r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.is_one() && b.den_.is_one()) {
        RatFunc r;
        r.num_ = a.num_ + b.num_;
        return r;
    }
    // with g = gcd of the denominators, the only common factor of the combined
    // numerator and denominator divides g; everything else is already coprime
    Poly g = poly_gcd(a.den_, b.den_);
    Poly ad = g.is_one() ? b.den_ : exact_div(b.den_, g); // b.den / g
    Poly bd = g.is_one() ? a.den_ : exact_div(a.den_, g); // a.den / g
    Poly num = a.num_ * ad + b.num_ * bd;
    RatFunc r;
    if (num.is_zero()) return r;
    Poly den = bd * b.den_;
    if (!g.is_one()) {
        Poly g2 = poly_gcd(num, g);
        if (!g2.is_one()) {
            num = exact_div(num, g2);
            den = exact_div(den, g2);
        }
    }
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    // cross-cancellation keeps every gcd call on factors that are already small
    Poly an = a.num_, bn = b.num_, ad = a.den_, bd = b.den_;
    if (!bd.is_one() && !an.is_constant()) {
        Poly g = poly_gcd(an, bd);
        if (!g.is_one()) {
            an = exact_div(an, g);
            bd = exact_div(bd, g);
        }
    }
    if (!ad.is_one() && !bn.is_constant()) {
        Poly g = poly_gcd(bn, ad);
        if (!g.is_one()) {
            bn = exact_div(bn, g);
            ad = exact_div(ad, g);
        }
    }
    RatFunc r;
    r.num_ = an * bn;
    r.den_ = ad * bd;
    return r;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw MathError("division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::inv() const {
    if (is_zero()) throw MathError("division by zero");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
    if (e == 0) return RatFunc(Rat(1));
    if (e < 0) return inv().pow(-e);
    return RatFunc(num_.pow(e), den_.pow(e));
}

RatFunc RatFunc::derivative() const {
    if (den_.is_one()) return RatFunc(num_.derivative());
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Rat RatFunc::eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (d.is_zero()) throw MathError("evaluation at a pole");
    return num_.eval(x) / d;
}

int RatFunc::order_at(const Poly& q) const {
    if (q.degree() < 1) throw MathError("order_at requires a nonconstant factor");
    if (is_zero()) return 0;
    auto count = [&](Poly p) {
        int k = 0;
        while (true) {
            auto [quo, rem] = divmod(p, q);
            if (!rem.is_zero()) return k;
            ++k;
            p = quo;
            if (p.is_zero()) return k;
        }
    };
    int zero_ord = count(num_);
    if (zero_ord > 0) return zero_ord;
    return -count(den_);
}

std::string RatFunc::to_string(const std::string& var) const {
    if (den_.is_one()) return num_.to_string(var);
    // Fold the numerator's fractional content into the displayed denominator,
    // keeping output like -1/(8*t) instead of (-1/8)/t.
    Rat c = num_.content();
    Poly shown_num = num_ * Rat(c.den());
    Poly shown_den = den_ * Rat(c.den());
    auto atom = [&](const Poly& p) {
        // single term with coefficient +-1, or a plain constant
        if (p.is_constant()) return true;
        int nz = 0, top = p.degree();
        for (int i = 0; i <= top; ++i)
            if (!p.coeff(i).is_zero()) ++nz;
        return nz == 1 && p.lc().abs().is_one() && p.lc().sign() > 0;
    };
    auto single_term = [&](const Poly& p) {
        int nz = 0;
        for (int i = 0; i <= p.degree(); ++i)
            if (!p.coeff(i).is_zero()) ++nz;
        return nz <= 1 && p.lc().is_integer();
    };
    std::ostringstream os;
    if (single_term(shown_num)) os << shown_num.to_string(var);
    else os << "(" << shown_num.to_string(var) << ")";
    os << "/";
    if (atom(shown_den)) os << shown_den.to_string(var);
    else os << "(" << shown_den.to_string(var) << ")";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.to_string(); }

} // namespace diffquat
