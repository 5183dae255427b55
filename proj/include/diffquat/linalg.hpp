#pragma once

#include <optional>
#include <vector>

#include "diffquat/rat.hpp"

namespace diffquat {

// Exact solution set of A x = b over Q.
struct LinearSolution {
    std::vector<Rat> particular;            // one solution (free variables = 0)
    std::vector<std::vector<Rat>> nullspace; // basis of the homogeneous kernel
};

// nullopt when the system is inconsistent. A is row-major, rows may be fewer
// or more than columns.
std::optional<LinearSolution> solve_linear(std::vector<std::vector<Rat>> a, std::vector<Rat> b);

} // namespace diffquat
