#pragma once

#include "diffquat/engine.hpp"

namespace diffquat {

// Search for trace-zero elements w with w^2 in k* and d(w) in k*w, and for an
// anticommuting generating pair of them. The case analysis covers inner parts
// along a single generator (theta in k*u, k*v or k*uv); richer inner parts
// report Inconclusive. NotStandard is only reported when the underlying
// solvers were complete, so the eigen-line enumeration is exhaustive.
struct StandardReport {
    enum class Status { Standard, NotStandard, Inconclusive } status = Status::Inconclusive;
    std::optional<std::pair<QuatElem, QuatElem>> pair; // verified, Standard only
    std::vector<QuatElem> eigen_elements;              // representatives found
    std::string detail;
};

StandardReport standard_analyze(const QuatAlgebra& alg, const DerivationSpec& spec,
                                const EngineOptions& opt = {});

} // namespace diffquat
