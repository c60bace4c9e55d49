#pragma once

#include <utility>
#include <vector>

#include "hyperfree/scalars/domain.hpp"

namespace hyperfree {

template <ScalarDomain K>
using Matrix = std::vector<std::vector<K>>;

/// In-place reduced row echelon form; the pivot in each column is the first row (at or below
/// the current one) with a nonzero entry. Returns the pivot columns.
template <ScalarDomain K>
std::vector<int> row_reduce(Matrix<K>& rows, int cols) {
    std::vector<int> pivots;
    std::size_t r = 0;
    for (int c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c].is_zero()) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        const K inv = one<K>() / rows[r][c];
        for (int k = c; k < cols; ++k)
            if (!rows[r][k].is_zero()) rows[r][k] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            const K f = rows[i][c];
            for (int k = c; k < cols; ++k)
                if (!rows[r][k].is_zero()) rows[i][k] -= f * rows[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

/// Basis of { v : rows * v = 0 }, one vector per non-pivot column (that entry set to one).
template <ScalarDomain K>
std::vector<std::vector<K>> nullspace(Matrix<K> rows, int cols) {
    const auto pivots = row_reduce(rows, cols);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<K>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<K> v(cols);
        v[f] = one<K>();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

template <ScalarDomain K>
int rank(Matrix<K> rows, int cols) {
    return static_cast<int>(row_reduce(rows, cols).size());
}

} // namespace hyperfree
