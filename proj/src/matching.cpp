#include "irsoff/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace irsoff {

std::vector<std::uint8_t> MatchingOutcome::to_matrix() const {
    std::vector<std::uint8_t> u(static_cast<size_t>(rows) * cols, 0);
    for (int i = 0; i < rows; ++i)
        if (assignment[i] >= 0) u[static_cast<size_t>(i) * cols + assignment[i]] = 1;
    return u;
}

MatchingOutcome outcome_from_assignment(const std::vector<double>& cost, int rows, int cols,
                                        std::vector<int> assignment) {
    MatchingOutcome out;
    out.rows = rows;
    out.cols = cols;
    out.total_cost = 0.0;
    for (int i = 0; i < rows; ++i) out.total_cost += cost[static_cast<size_t>(i) * cols + assignment[i]];
    out.assignment = std::move(assignment);
    return out;
}

namespace {

void check_costs(const std::vector<double>& cost, int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("assignment: empty cost matrix");
    if (static_cast<size_t>(rows) * cols != cost.size())
        throw std::invalid_argument("assignment: cost size does not match rows*cols");
    for (double c : cost)
        if (!std::isfinite(c)) throw std::invalid_argument("assignment: non-finite cost entry");
}

}  // namespace

MatchingOutcome solve_assignment(const std::vector<double>& cost, int rows, int cols) {
    check_costs(cost, rows, cols);
    if (rows > cols)
        throw std::invalid_argument("assignment: more rows than columns; pad helpers first");

    // Pad to square with a sentinel larger than any real total, so dummy
    // rows never displace a real pairing.
    const int n = cols;
    double sentinel = 1.0;
    for (double c : cost) sentinel += std::abs(c);
    std::vector<double> a(static_cast<size_t>(n) * n, sentinel);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a[static_cast<size_t>(i) * n + j] = cost[static_cast<size_t>(i) * cols + j];

    // Potentials form, 1-indexed; p[j] = row matched to column j.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = a[static_cast<size_t>(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    MatchingOutcome out;
    out.rows = rows;
    out.cols = cols;
    out.assignment.assign(rows, -1);
    for (int j = 1; j <= n; ++j) {
        int i = p[j];
        if (i >= 1 && i <= rows) out.assignment[i - 1] = j - 1;
    }
    out.total_cost = 0.0;
    for (int i = 0; i < rows; ++i)
        out.total_cost += cost[static_cast<size_t>(i) * cols + out.assignment[i]];
    return out;
}

MatchingOutcome brute_force_assignment(const std::vector<double>& cost, int rows, int cols) {
    check_costs(cost, rows, cols);
    if (rows > 8 || cols > 8)
        throw std::invalid_argument("brute_force_assignment: dimensions exceed the 8x8 guard");
    if (rows > cols)
        throw std::invalid_argument("brute_force_assignment: more rows than columns");

    std::vector<int> current(rows, -1), best;
    std::vector<char> taken(cols, 0);
    double best_total = std::numeric_limits<double>::infinity();

    // Depth-first over injective maps in lexicographic order; strict
    // improvement keeps the lexicographically smallest optimum.
    auto recurse = [&](auto&& self, int i, double total) -> void {
        if (i == rows) {
            if (total < best_total) {
                best_total = total;
                best = current;
            }
            return;
        }
        for (int j = 0; j < cols; ++j) {
            if (taken[j]) continue;
            taken[j] = 1;
            current[i] = j;
            self(self, i + 1, total + cost[static_cast<size_t>(i) * cols + j]);
            taken[j] = 0;
        }
        current[i] = -1;
    };
    recurse(recurse, 0, 0.0);

    MatchingOutcome out;
    out.rows = rows;
    out.cols = cols;
    out.assignment = std::move(best);
    out.total_cost = best_total;
    return out;
}

}  // namespace irsoff
