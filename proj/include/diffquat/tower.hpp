#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "diffquat/ratfunc.hpp"

namespace diffquat {

// Base differential field (Q(t), ') with configurable t'.
struct DiffBase {
    std::string var = "t";
    RatFunc t_prime = RatFunc(Rat(1));
    bool operator==(const DiffBase& o) const { return var == o.var && t_prime == o.t_prime; }
};

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

namespace detail {
// Element value at some tower level. Level 0 holds a rational function of t;
// level h >= 1 is a fraction of dense polynomials in the level-h generator
// whose coefficients are values one level down. Radical levels keep den = [1]
// and num reduced below the radical index; transcendental levels keep the
// fraction gcd-reduced with monic denominator. Normal forms are unique, so
// structural equality decides field equality.
struct Val {
    RatFunc rf;
    std::vector<Val> num, den;
    bool operator==(const Val& o) const { return rf == o.rf && num == o.num && den == o.den; }
};
} // namespace detail

enum class StepKind { Radical, Primitive, HyperExp, RiccatiGen };

class TowerElem {
  public:
    TowerElem() = default; // empty; only assignment and valid() are meaningful
    static TowerElem from_ratfunc(const TowerPtr& t, const RatFunc& f);
    static TowerElem from_rat(const TowerPtr& t, const Rat& c);
    static TowerElem generator(const TowerPtr& t, int step_index);

    bool valid() const { return static_cast<bool>(tower_); }
    const TowerPtr& tower() const { return tower_; }
    const detail::Val& val() const { return val_; }

    TowerElem operator-() const;
    friend TowerElem operator+(const TowerElem& a, const TowerElem& b);
    friend TowerElem operator-(const TowerElem& a, const TowerElem& b);
    friend TowerElem operator*(const TowerElem& a, const TowerElem& b);
    friend TowerElem operator/(const TowerElem& a, const TowerElem& b);

    TowerElem inv() const;
    TowerElem pow(int e) const;
    TowerElem derive() const;
    bool is_zero() const;
    bool is_one() const;
    bool is_constant() const { return derive().is_zero(); }

    // Equality of normal forms; throws TowerMismatchError for unrelated towers.
    bool equals(const TowerElem& o) const;

    // The element as a base-field rational function, when it is one.
    std::optional<RatFunc> as_base() const;

    std::string to_string() const;

    // Same element viewed in an extension of its tower.
    TowerElem promoted(const TowerPtr& taller) const;

  private:
    friend class Tower;
    TowerElem(TowerPtr t, detail::Val v) : tower_(std::move(t)), val_(std::move(v)) {}
    TowerPtr tower_;
    detail::Val val_;
};

inline bool normalize_equals(const TowerElem& a, const TowerElem& b) { return a.equals(b); }

struct TowerStep {
    StepKind kind = StepKind::Radical;
    std::string name;
    int n = 0;                  // Radical index
    TowerElem f;                // Radical radicand, element of the sub-tower
    TowerElem w;                // Primitive / HyperExp rate
    TowerElem a0, a1, a2;       // RiccatiGen coefficients

    static TowerStep radical(std::string name, int n, TowerElem f);
    static TowerStep primitive(std::string name, TowerElem w);
    static TowerStep hyperexp(std::string name, TowerElem w);
    static TowerStep riccati_gen(std::string name, TowerElem a0, TowerElem a1, TowerElem a2);
};

// Immutable chain of differential field extensions over (Q(t), ').
// Node of height h carries steps 0..h-1; elements reference their node.
class Tower : public std::enable_shared_from_this<Tower> {
  public:
    static TowerPtr make_base(DiffBase base);

    struct Adjoined {
        TowerPtr tower;
        TowerElem gen;   // element satisfying the requested generator relation
        bool merged = false;
        std::function<TowerElem(const TowerElem&)> lift; // old-tower elements into the new tower
    };
    // Radical steps over an identical radicand merge into a single generator
    // with the lcm index; the returned gen is then the appropriate power of
    // the merged generator.
    static Adjoined adjoin_step(const TowerPtr& tower, TowerStep step);

    int height() const { return height_; }
    const DiffBase& base() const { return base_; }
    const TowerStep& step(int i) const;
    const Tower* node(int level) const; // node of the given height along the chain
    bool same(const Tower& other) const;
    bool prefix_of(const Tower& other) const;
    int tr_degree() const;

    const detail::Val& gen_deriv() const { return gen_deriv_; }     // level = height()
    const detail::Val& radicand_val() const { return radicand_; }   // level = height()-1

  private:
    Tower() = default;
    static std::shared_ptr<Tower> make_node(TowerPtr parent, TowerStep step);

    TowerPtr parent_;
    DiffBase base_;
    std::optional<TowerStep> step_;
    detail::Val gen_deriv_;
    detail::Val radicand_;
    int height_ = 0;
};

inline int tr_degree(const TowerPtr& t) { return t->tr_degree(); }

// A nonzero x (in tower, possibly after a radical adjunction or merge) with
// x' = (f'/(n f)) x, i.e. a solution of Y' = aY when n*a = f'/f in Q(t).
struct RealizedRadical {
    TowerPtr tower;
    TowerElem elem;
    bool extended = false; // tower changed (new step or merged index)
    std::function<TowerElem(const TowerElem&)> lift;
};
RealizedRadical realize_radical(const TowerPtr& tower, int n, const RatFunc& f,
                                const std::string& preferred_name = "theta");

} // namespace diffquat
