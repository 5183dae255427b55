#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "diffquat/quat.hpp"

namespace diffquat {

enum class SolveStatus { Complete, BestEffort, Exhausted };

// theta with theta^n = f and theta' = a*theta, n minimal, n*a = f'/f exactly.
struct RadicalSolution {
    int n = 1;
    RatFunc f;
};

// n*a = f'/f for the minimal n, when a is a log-derivative multiple.
struct LogDerivMultiple {
    int n = 1;
    RatFunc f;
};

std::optional<LogDerivMultiple> logderiv_multiple(const DiffBase& base, const RatFunc& a);

std::optional<RadicalSolution> solve_linear_radical(const DiffBase& base, const RatFunc& a,
                                                    int n_max);

// Solutions +-eta with eta^2 = B for the inner parts along a single
// anticommuting generator (theta in k*v gives B = beta; theta in k*uv gives
// B = -beta). Both returned elements are verified by substitution.
struct RadicalPair {
    TowerPtr tower;
    TowerElem plus, minus;
    bool extended = false;
    std::function<TowerElem(const TowerElem&)> lift;
};

// Rational solution set of X' = a0 + a1 X + a2 X^2 over (Q(t), t'=1).
struct RiccatiRatCoeffs {
    RatFunc a0, a1, a2;
    bool is_solution(const RatFunc& x) const {
        return x.derivative() == a0 + a1 * x + a2 * x * x;
    }
};

struct RiccatiSolutionSet {
    std::vector<RatFunc> isolated;           // verified, sorted by rendering
    bool has_family = false;                 // a one-parameter family exists
    std::array<RatFunc, 2> family_reps;      // two verified representatives
    std::optional<RadicalPair> radical;      // filled by the pattern solver
    SolveStatus status = SolveStatus::Complete;
    std::vector<std::string> notes;

    std::vector<RatFunc> all_rational() const;
};

// Complete under the documented restriction: every pole location needed by a
// solution must be rational (denominators splitting over Q); otherwise the
// result is flagged BestEffort. Definite emptiness (odd-order poles, odd
// degree growth, irrational indicial roots at rational poles) returns an
// empty Complete set. `budget` caps the branch enumeration.
RiccatiSolutionSet riccati_rational_solutions(const DiffBase& base, const RiccatiRatCoeffs& eq,
                                              long budget = 10000);

// Affine rational solution set of X' = a1 X + a0 (complete; linear equations
// have no movable poles, so factor-block bounds need no splitting).
struct LinearSolutions {
    std::optional<RatFunc> particular;
    std::optional<RatFunc> hom; // nonzero rational solution of X' = a1 X, if any
};
LinearSolutions linear_rational_solutions(const DiffBase& base, const RatFunc& a1,
                                          const RatFunc& a0);

// +-sqrt(B) solutions of the splitting Riccati for single-generator inner
// parts; nullopt when the derivation does not match the pattern.
std::optional<RadicalPair> riccati_pattern_solutions(const QuatAlgebra& alg,
                                                     const DerivationSpec& spec,
                                                     const TowerPtr& tower, const RiccatiEq& eq);

// For base t' = q0 + q1 t + q2 t^2 (q2 != 0) and f with f' = n(q1/2 + q2 t) f:
// every rational zero/pole gamma of f satisfies q0 + q1 X + q2 X^2 = 0
// (constants have derivative zero). Verifies the precondition exactly.
struct ZeroPoleReport {
    struct Entry {
        Rat gamma;
        int order; // positive zero order, negative pole order
        bool satisfies;
    };
    std::vector<Entry> entries;
    bool all_pass = true;
};
ZeroPoleReport zeropole_oracle(const DiffBase& base, const RatFunc& f, int n);

} // namespace diffquat
