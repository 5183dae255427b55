#include "diffquat/linalg.hpp"

namespace diffquat {

std::optional<LinearSolution> solve_linear(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        std::swap(b[piv], b[r]);
        Rat inv = a[r][c].inv();
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Rat f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) return std::nullopt;

    LinearSolution sol;
    sol.particular.assign(cols, Rat(0));
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
        is_pivot[pivot_col[i]] = true;
        sol.particular[pivot_col[i]] = b[i];
    }
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[c] = Rat(1);
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][c];
        sol.nullspace.push_back(std::move(v));
    }
    return sol;
}

} // namespace diffquat
