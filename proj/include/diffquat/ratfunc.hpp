#pragma once

#include <limits>
#include <optional>

#include "diffquat/poly.hpp"

namespace diffquat {

// Element of Q(t): reduced fraction with monic denominator. Unique
// representative per field element, so operator== decides field equality.
class RatFunc {
  public:
    RatFunc() : den_(Rat(1)) {}
    explicit RatFunc(const Rat& c) : num_(c), den_(Rat(1)) {}
    explicit RatFunc(Poly p) : num_(std::move(p)), den_(Rat(1)) {}
    RatFunc(Poly num, Poly den); // normalizes; throws on zero denominator
    static RatFunc t() { return RatFunc(Poly::var()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return den_.is_one() && num_.is_constant(); }
    std::optional<Rat> as_constant() const;

    // deg num - deg den; sentinel for the zero function.
    static constexpr int kZeroDegree = std::numeric_limits<int>::min();
    int degree() const { return is_zero() ? kZeroDegree : num_.degree() - den_.degree(); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc inv() const;
    RatFunc pow(int e) const;
    RatFunc derivative() const; // formal, i.e. with t' = 1

    // Value at a point where the denominator does not vanish.
    Rat eval(const Rat& x) const;
    bool defined_at(const Rat& x) const { return !den_.eval(x).is_zero(); }

    // Order of vanishing at the monic squarefree factor q: positive for zeros,
    // negative for poles, 0 otherwise. q must be nonconstant.
    int order_at(const Poly& q) const;

    std::string to_string(const std::string& var = "t") const;

  private:
    Poly num_, den_;
};

std::ostream& operator<<(std::ostream& os, const RatFunc& f);

// ratfunc_normalize of the interface: construct + reduce.
inline RatFunc ratfunc_normalize(Poly num, Poly den) { return RatFunc(std::move(num), std::move(den)); }

} // namespace diffquat
