#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "diffquat/errors.hpp"

namespace diffquat {

// Exact arbitrary-precision rational. Canonical at all times:
// gcd(|num|, den) = 1, den > 0, zero is 0/1.
class Rat {
  public:
    Rat() : q_(0) {}
    Rat(long n) : q_(n) {} // NOLINT: implicit by design, mirrors integer literals
    Rat(long n, long d) : q_(n, d) { canon(); }
    Rat(mpz_class n, mpz_class d);
    explicit Rat(const mpq_class& q) : q_(q) { canon(); }
    explicit Rat(const mpz_class& n) : q_(n) {}

    static Rat from_string(const std::string& s); // "p", "-p", "p/q"

    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rat operator-() const { return Rat(mpq_class(-q_)); }
    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

    Rat inv() const;
    Rat abs() const { return Rat(mpq_class(::abs(q_))); }
    Rat pow(long e) const;

    std::string to_string() const;

  private:
    void canon() {
        if (q_.get_den() == 0) throw MathError("rational with zero denominator");
        q_.canonicalize();
    }
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

mpz_class gcd_z(const mpz_class& a, const mpz_class& b);
mpz_class lcm_z(const mpz_class& a, const mpz_class& b);

} // namespace diffquat
