#include "diffquat/rat.hpp"

#include <ostream>

namespace diffquat {

Rat::Rat(mpz_class n, mpz_class d) : q_(std::move(n)) {
    if (d == 0) throw MathError("rational with zero denominator");
    q_ /= mpq_class(std::move(d));
    q_.canonicalize();
}

Rat Rat::from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(mpz_class(s));
        mpz_class n(s.substr(0, slash));
        mpz_class d(s.substr(slash + 1));
        return Rat(n, d);
    } catch (const std::invalid_argument&) {
        throw MathError("malformed rational literal: " + s);
    }
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw MathError("division by zero");
    q_ /= o.q_;
    return *this;
}

Rat Rat::inv() const {
    if (is_zero()) throw MathError("division by zero");
    return Rat(mpq_class(1 / q_));
}

Rat Rat::pow(long e) const {
    if (e == 0) return Rat(1);
    if (is_zero()) {
        if (e < 0) throw MathError("division by zero");
        return Rat(0);
    }
    mpz_class n, d;
    unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(n.get_mpz_t(), q_.get_num().get_mpz_t(), ae);
    mpz_pow_ui(d.get_mpz_t(), q_.get_den().get_mpz_t(), ae);
    return e > 0 ? Rat(n, d) : Rat(d, n);
}

std::string Rat::to_string() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

mpz_class gcd_z(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

mpz_class lcm_z(const mpz_class& a, const mpz_class& b) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

} // namespace diffquat
