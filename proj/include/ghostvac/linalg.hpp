#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ghostvac/rat.hpp"

namespace gv {

// Sparse row over column indices.
using SparseRow = std::map<std::int64_t, Rat>;

// Exact kernel of a sparse rational matrix with `num_cols` columns.
// Returns a basis of the null space; each vector is dense of length num_cols.
// Deterministic: pivots are chosen as the lowest column index.
std::vector<std::vector<Rat>> sparse_kernel(const std::vector<SparseRow>& rows, std::int64_t num_cols);

// Particular solution of A x = b (exact); empty optional if inconsistent.
// Among solutions, free variables are set to zero.
struct LinearSolveResult {
    bool consistent = false;
    std::vector<Rat> solution;
};
LinearSolveResult sparse_solve(const std::vector<SparseRow>& rows, const std::vector<Rat>& rhs,
                               std::int64_t num_cols);

}  // namespace gv
