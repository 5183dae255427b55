#pragma once

#include <utility>
#include <vector>

#include "diffquat/rat.hpp"

namespace diffquat {

// Dense univariate polynomial over Q, coefficient index = power of the variable.
// Invariant: coefficient vector is empty (zero polynomial) or ends in a nonzero
// coefficient. degree() of the zero polynomial is the sentinel -1.
class Poly {
  public:
    Poly() = default;
    explicit Poly(const Rat& constant);
    static Poly from_coeffs(std::vector<Rat> coeffs);
    static Poly var();                      // t
    static Poly monomial(const Rat& c, int e);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    bool is_constant() const { return c_.size() <= 1; }
    Rat coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rat(0); }
    Rat lc() const { return c_.empty() ? Rat(0) : c_.back(); }
    const std::vector<Rat>& coeffs() const { return c_; }

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator*(const Rat& s) const;
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return a.c_ != b.c_; }

    // Quotient and remainder over Q; throws MathError on zero divisor.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    // Exact division; throws if the remainder is nonzero.
    friend Poly exact_div(const Poly& a, const Poly& b);

    Poly derivative() const; // formal d/dt
    Rat eval(const Rat& x) const;
    Poly monic() const;
    Poly pow(int e) const;
    // Positive rational c with p = c * (primitive integer polynomial whose
    // leading coefficient keeps the sign of lc(p)).
    Rat content() const;
    Poly primitive_part() const { return *this * content().inv(); }
    // p(t) -> p(t + a), used for Taylor coefficients at a point.
    Poly shift(const Rat& a) const;

    std::string to_string(const std::string& var = "t") const;

  private:
    void trim();
    std::vector<Rat> c_;
};

// Monic gcd; gcd(0, q) = monic(q), gcd(0, 0) = 0. Primitive Euclidean scheme
// with content extraction to keep integer coefficients small.
Poly poly_gcd(const Poly& a, const Poly& b);

// g = gcd(a, b) monic together with s, t such that s*a + t*b = g.
struct ExtGcd {
    Poly g, s, t;
};
ExtGcd poly_ext_gcd(const Poly& a, const Poly& b);

// res_t(a, b); 0 when the polynomials share a factor.
Rat resultant(const Poly& a, const Poly& b);

// Unique interpolating polynomial of degree < points.size() through the given
// (x, y) pairs; x values must be pairwise distinct.
Poly interpolate(const std::vector<std::pair<Rat, Rat>>& points);

std::ostream& operator<<(std::ostream& os, const Poly& p);

} // namespace diffquat
