#include "hmgroup/hungarian.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "hmgroup/errors.hpp"

namespace hmgroup {

HungarianSolution hungarian_solve(const SquareMatrix& c) {
    const std::size_t n = c.size();
    if (n == 0) throw InputError("hungarian_solve: empty matrix");
    for (std::size_t i = 0; i < n; ++i) {
        for (const double v : c.row(i)) {
            if (!std::isfinite(v)) throw InputError("hungarian_solve: non-finite entry");
            if (v < 0.0) throw InputError("hungarian_solve: negative entry");
        }
    }

    constexpr double inf = std::numeric_limits<double>::infinity();
    constexpr std::size_t none = 0;
    // Columns and rows are 1-based here; column 0 is the virtual root of each
    // augmenting search.
    std::vector<double> row_pot(n + 1, 0.0);
    std::vector<double> col_pot(n + 1, 0.0);
    std::vector<std::size_t> row_of_col(n + 1, none);
    std::vector<std::size_t> prev_col(n + 1, none);
    std::vector<double> min_slack(n + 1);
    std::vector<char> visited(n + 1);

    for (std::size_t row = 1; row <= n; ++row) {
        row_of_col[0] = row;
        std::size_t col = 0;
        std::fill(min_slack.begin(), min_slack.end(), inf);
        std::fill(visited.begin(), visited.end(), 0);
        do {
            visited[col] = 1;
            const std::size_t i = row_of_col[col];
            const auto costs = c.row(i - 1);
            double delta = inf;
            std::size_t next_col = none;
            for (std::size_t j = 1; j <= n; ++j) {
                if (visited[j]) continue;
                const double slack = costs[j - 1] - row_pot[i] - col_pot[j];
                if (slack < min_slack[j]) {
                    min_slack[j] = slack;
                    prev_col[j] = col;
                }
                if (min_slack[j] < delta) {
                    delta = min_slack[j];
                    next_col = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (visited[j]) {
                    row_pot[row_of_col[j]] += delta;
                    col_pot[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            col = next_col;
        } while (row_of_col[col] != none);

        // Flip the alternating path back to the root.
        do {
            const std::size_t back = prev_col[col];
            row_of_col[col] = row_of_col[back];
            col = back;
        } while (col != 0);
    }

    std::vector<std::size_t> sigma(n);
    for (std::size_t j = 1; j <= n; ++j) sigma[row_of_col[j] - 1] = j - 1;
    PermutationAssignment permutation(std::move(sigma));
    const double cost = assignment_cost(c, permutation.sigma());
    const bool symmetric = permutation.is_involution();
    return {std::move(permutation), cost, symmetric};
}

double upper_bound_efficiency(const HungarianSolution& solution) {
    if (!(solution.cost > 0.0)) throw InputError("upper bound undefined for non-positive cost");
    return 1.0 / solution.cost;
}

}  // namespace hmgroup
