#pragma once

#include "hmgroup/matching_core.hpp"

namespace hmgroup {

struct HungarianSolution {
    PermutationAssignment permutation;
    /// Recomputed from the input matrix along `permutation`.
    double cost;
    bool is_symmetric;
};

/// Minimum-cost assignment on a square, finite, non-negative matrix
/// (symmetry is not assumed). Shortest augmenting paths with row/column
/// potentials, O(n^3). Rows are inserted in index order and the smallest
/// column index wins ties, so the result is deterministic.
/// Throws InputError on empty, non-finite or negative input.
HungarianSolution hungarian_solve(const SquareMatrix& c);

inline HungarianSolution hungarian_solve(const CostMatrix& c) { return hungarian_solve(c.matrix()); }

/// 1 / cost: no grouping can offer a higher average spectrum efficiency.
/// Throws InputError when the cost is not positive.
double upper_bound_efficiency(const HungarianSolution& solution);

}  // namespace hmgroup
