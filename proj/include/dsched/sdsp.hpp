#pragma once

#include <cstdint>
#include <vector>

#include "dsched/model.hpp"

namespace dsched {

// Minimum-cost table for the single-drone problem. Rows follow the deliveries
// re-ordered by rendezvous time (earliest finishing first): cell(j, p) holds
// the smallest total cost of a pairwise-compatible subset of the first j
// deliveries in that order with total profit exactly p, for p in 0..n*P
// (P = largest single profit). Entries at or above infinity_sentinel mean
// "no such subset".
//
// The rendezvous order is what makes the recurrence sound: every row at or
// before row_pred[j] finishes before row j launches, so any subset drawn from
// those rows can be extended with row j. Under launch order that prefix
// property fails for nested intervals.
struct DpTable {
    int n = 0;
    std::int64_t max_profit_index = 0;  // n * P
    double infinity_sentinel = 0.0;     // sum of all costs + 1
    std::vector<double> cells;          // (n + 1) rows of (max_profit_index + 1)
    std::vector<int> order;             // order[j-1] = delivery id of row j
    std::vector<int> row_pred;          // last row finishing before row j launches
    std::uint64_t cells_computed = 0;   // inner-loop recurrence evaluations

    double cell(int j, std::int64_t p) const {
        return cells[static_cast<std::size_t>(j) *
                         static_cast<std::size_t>(max_profit_index + 1) +
                     static_cast<std::size_t>(p)];
    }
    bool is_infinite(double v) const { return v >= infinity_sentinel; }
};

struct SdspSolution {
    Assignment assignment;
    double profit = 0.0;
    bool optimal_flag = false;  // true for the exact path, false for the scheme
    double epsilon = 0.0;       // 0 for exact
    std::uint64_t dp_cells = 0;
};

// Fills the minimum-cost table row by row. Requires every profit to be a
// nonnegative integer value; throws std::invalid_argument otherwise. The
// predecessor table is part of the call signature for symmetry with the other
// solvers; the table derives its own rendezvous-ordered predecessor index.
DpTable build_dp_table(const Instance& inst, const PredecessorTable& pt);

// Largest profit whose minimum cost fits the budget (always defined; 0 fits).
std::int64_t best_profit_within_budget(const DpTable& table, double budget);

// Recovers the subset achieving cell(n, target_profit) by walking the table.
// When both keeping and skipping a delivery reach the same cost, the delivery
// is skipped. Throws std::logic_error if the walk cannot reproduce the cell
// values (a table bug).
Assignment backtrack(const DpTable& table, const Instance& inst,
                     const PredecessorTable& pt, std::int64_t target_profit);

// Exact maximum-profit compatible subset within the budget, for integer
// profits. O(n^2 P) time.
SdspSolution solve_dp_exact(const Instance& inst, const PredecessorTable& pt);

// (1 - epsilon)-approximation for arbitrary nonnegative real profits: floors
// each profit to an integer grid of step epsilon*P/n, solves that instance
// exactly, and reports the chosen set under the original profits.
// O(n^2 * floor(n/epsilon)) time. Requires epsilon in (0, 1).
SdspSolution solve_fptas(const Instance& inst, const PredecessorTable& pt,
                         double epsilon);

}  // namespace dsched
