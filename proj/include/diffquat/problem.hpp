#pragma once

#include <string>

#include "diffquat/engine.hpp"

namespace diffquat {

// Parsed problem description: a differential field, the algebra data, the
// inner-derivation coefficients and optional tower-step hints.
struct ProblemSpec {
    DiffBase base;
    RatFunc alpha, beta;
    DerivationSpec derivation;
    Hints hints;

    QuatAlgebra algebra() const { return QuatAlgebra(alpha, beta, base); }
};

// Sectioned key-value format:
//   [field]       t_prime = "1"
//   [algebra]     alpha = "1"        beta = "t"
//   [derivation]  a1 = "-1/(8*t)"    a2 = "0"    a3 = "0"
//   [hints]       hint = "primitive:1/t"       (zero or more, optional section)
// '#' starts a comment; values are quoted expression strings.
ProblemSpec parse_problem_text(const std::string& text);
ProblemSpec load_problem(const std::string& path);

} // namespace diffquat
