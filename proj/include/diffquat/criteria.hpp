#pragma once

#include <optional>

#include "diffquat/decomp.hpp"
#include "diffquat/ratfunc.hpp"

namespace diffquat {

// Witness data for finite splitting of d = d_(u,v) + ad(a*u):
// theta = c (g0 + xi g1)/(g0 - xi g1) realizes a = theta'/(n xi theta).
struct FiniteSplitWitness {
    Poly gamma0, gamma1;
    int n = 1;
    Rat c = Rat(1);
};

// a = p/q with p = 2 alpha (g0 g1' - g0' g1) + alpha' g0 g1 and
// q = n alpha (g0^2 - alpha g1^2). The constant c cancels from the
// logarithmic derivative and is carried only for rendering.
bool finite_split_witness_check(const Poly& alpha, const RatFunc& a, const Poly& gamma0,
                                const Poly& gamma1, int n, const Rat& c);

struct FiniteSplitSearchResult {
    enum class Status { Found, Exhausted } status = Status::Exhausted;
    std::optional<FiniteSplitWitness> witness;
    long tried = 0;
};
// Best-effort enumeration of small-coefficient coprime (gamma0, gamma1) with
// degree <= degree_bound; n is solved from the candidate rather than
// enumerated. Exhaustion is a budget statement, not a nonexistence proof.
FiniteSplitSearchResult finite_split_search(const Poly& alpha, const RatFunc& a,
                                            int degree_bound, int n_max, long budget);

// theta = g0 + xi g1 over k(xi), xi^2 = alpha. Computes independently whether
// theta'/theta lies in xi*k (via quadratic-extension arithmetic) and whether
// N(theta) = g0^2 - alpha g1^2 is a constant (via direct differentiation);
// the two booleans agree.
struct NormConstantCheck {
    bool logderiv_in_xik = false;
    bool norm_constant = false;
};
NormConstantCheck norm_constant_check(const RatFunc& alpha, const RatFunc& g0, const RatFunc& g1);

// For odd-degree alpha in Q[t] and d = d_(u,v) + ad(a*u), a = f/g in lowest
// terms: NotSplitByAlgebraic when (a) deg(g) - deg(f) < (deg(alpha)+3)/2, or
// (b) h^2 | g for some irreducible factor h of alpha. The two conditions act
// as a disjunction by default; require_both switches to the conjunction.
struct NonsplitReport {
    bool not_split = false;
    char condition = 0; // 'a' or 'b' (first triggered) when not_split
    std::string evidence;
};
NonsplitReport nonsplit_algebraic_check(const Poly& alpha, const RatFunc& a,
                                        bool require_both = false);

} // namespace diffquat
