#pragma once

#include <cstdint>
#include <vector>

namespace irsoff {

// Result of a bipartite assignment: helper index per task user plus the
// summed cost of the chosen pairs. With cols >= rows every row is matched.
struct MatchingOutcome {
    int rows = 0, cols = 0;
    std::vector<int> assignment;  // size rows, values in [0, cols)
    double total_cost = 0.0;

    bool matched(int i, int j) const { return assignment[i] == j; }
    std::vector<std::uint8_t> to_matrix() const;
};

// Minimum-cost assignment via the Kuhn-Munkres potentials method, O(n^3).
// cost is row-major rows x cols; requires finite entries and cols >= rows.
// Rectangular inputs are padded square internally with a sentinel cost of
// 1 + sum of all finite entries. Ties resolve toward the lowest helper index.
MatchingOutcome solve_assignment(const std::vector<double>& cost, int rows, int cols);

// Exact optimum by enumerating all injective row->column maps, keeping the
// lexicographically smallest assignment among equal totals. Guarded to
// rows <= 8 and cols <= 8.
MatchingOutcome brute_force_assignment(const std::vector<double>& cost, int rows, int cols);

// Wraps a caller-chosen assignment with its total under the given costs.
MatchingOutcome outcome_from_assignment(const std::vector<double>& cost, int rows, int cols,
                                        std::vector<int> assignment);

}  // namespace irsoff
