#include "dsched/sdsp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dsched {

namespace {

constexpr double kMaxIntegerProfit = 9.0e15;  // stays exact in a double

std::vector<std::int64_t> integer_profits(const Instance& inst) {
    std::vector<std::int64_t> out;
    out.reserve(inst.deliveries.size());
    for (const Delivery& d : inst.deliveries) {
        if (!(d.profit >= 0.0) || std::floor(d.profit) != d.profit ||
            d.profit > kMaxIntegerProfit) {
            throw std::invalid_argument(
                "delivery " + std::to_string(d.id) +
                " has a non-integer profit; the exact table requires integer "
                "profits, use solve_fptas for real-valued profits");
        }
        out.push_back(static_cast<std::int64_t>(d.profit));
    }
    return out;
}

SdspSolution empty_solution(bool optimal, double epsilon) {
    SdspSolution s;
    s.optimal_flag = optimal;
    s.epsilon = epsilon;
    return s;
}

}  // namespace

DpTable build_dp_table(const Instance& inst, const PredecessorTable& pt) {
    (void)pt;
    const int n = inst.size();
    const std::vector<std::int64_t> profits = integer_profits(inst);

    DpTable table;
    table.n = n;
    std::int64_t max_profit = 0;
    double cost_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        max_profit = std::max(max_profit, profits[static_cast<std::size_t>(i)]);
        cost_sum += inst.deliveries[static_cast<std::size_t>(i)].cost;
    }
    table.max_profit_index = static_cast<std::int64_t>(n) * max_profit;
    table.infinity_sentinel = cost_sum + 1.0;

    // Rows visit deliveries earliest-finishing first. Rendezvous times are
    // then nondecreasing row to row, so "every row up to row_pred[j] is
    // compatible with row j" holds and the recurrence below is exact.
    table.order.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) table.order[static_cast<std::size_t>(i)] = i + 1;
    std::sort(table.order.begin(), table.order.end(), [&](int a, int b) {
        const Delivery& da = inst.delivery(a);
        const Delivery& db = inst.delivery(b);
        if (da.t_rendezvous != db.t_rendezvous)
            return da.t_rendezvous < db.t_rendezvous;
        if (da.t_launch != db.t_launch) return da.t_launch < db.t_launch;
        return a < b;
    });
    std::vector<double> row_rendezvous(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        row_rendezvous[static_cast<std::size_t>(j)] =
            inst.delivery(table.order[static_cast<std::size_t>(j)]).t_rendezvous;
    }
    table.row_pred.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int j = 1; j <= n; ++j) {
        double launch = inst.delivery(table.order[static_cast<std::size_t>(j - 1)]).t_launch;
        // Rows with a strictly earlier rendezvous all sit before row j.
        table.row_pred[static_cast<std::size_t>(j)] = static_cast<int>(
            std::lower_bound(row_rendezvous.begin(), row_rendezvous.end(), launch) -
            row_rendezvous.begin());
    }

    const std::size_t cols = static_cast<std::size_t>(table.max_profit_index) + 1;
    table.cells.assign((static_cast<std::size_t>(n) + 1) * cols,
                       table.infinity_sentinel);
    table.cells[0] = 0.0;  // profit 0 from no deliveries costs nothing

    for (int j = 1; j <= n; ++j) {
        const Delivery& d = inst.delivery(table.order[static_cast<std::size_t>(j - 1)]);
        const std::int64_t pj = profits[static_cast<std::size_t>(d.id - 1)];
        const std::size_t row = static_cast<std::size_t>(j) * cols;
        const std::size_t prev = row - cols;
        const std::size_t pred_row =
            static_cast<std::size_t>(table.row_pred[static_cast<std::size_t>(j)]) * cols;
        table.cells[row] = 0.0;
        for (std::int64_t p = 1; p <= table.max_profit_index; ++p) {
            ++table.cells_computed;
            double value = table.cells[prev + static_cast<std::size_t>(p)];
            if (p >= pj) {
                // Keeping row j evicts every row after its last compatible
                // predecessor, so the remainder comes from that row.
                double keep = d.cost + table.cells[pred_row + static_cast<std::size_t>(p - pj)];
                if (keep < value) value = keep;
            }
            table.cells[row + static_cast<std::size_t>(p)] = value;
        }
    }
    return table;
}

std::int64_t best_profit_within_budget(const DpTable& table, double budget) {
    for (std::int64_t p = table.max_profit_index; p > 0; --p) {
        // The sentinel can undercut a generous budget, so unreachable profit
        // levels must be skipped explicitly.
        const double cost = table.cell(table.n, p);
        if (!table.is_infinite(cost) && cost <= budget) return p;
    }
    return 0;
}

Assignment backtrack(const DpTable& table, const Instance& inst,
                     const PredecessorTable& pt, std::int64_t target_profit) {
    (void)pt;
    if (table.is_infinite(table.cell(table.n, target_profit))) {
        throw std::invalid_argument("backtrack target profit is unreachable");
    }
    const std::vector<std::int64_t> profits = integer_profits(inst);

    std::vector<int> ids;
    int j = table.n;
    std::int64_t p = target_profit;
    while (j > 0 && p > 0) {
        if (table.cell(j, p) == table.cell(j - 1, p)) {
            --j;  // prefer exclusion on ties
            continue;
        }
        const int id = table.order[static_cast<std::size_t>(j - 1)];
        const std::int64_t pj = profits[static_cast<std::size_t>(id - 1)];
        const int pred = table.row_pred[static_cast<std::size_t>(j)];
        if (p < pj ||
            table.cell(j, p) != inst.delivery(id).cost + table.cell(pred, p - pj)) {
            throw std::logic_error("dp table inconsistent while backtracking at row " +
                                   std::to_string(j) + " p=" + std::to_string(p));
        }
        ids.push_back(id);
        p -= pj;
        j = pred;
    }
    if (p != 0) {
        throw std::logic_error("backtracking did not consume the target profit");
    }
    return make_assignment(inst, std::move(ids));
}

SdspSolution solve_dp_exact(const Instance& inst, const PredecessorTable& pt) {
    if (inst.size() == 0) return empty_solution(true, 0.0);
    DpTable table = build_dp_table(inst, pt);
    const std::int64_t best = best_profit_within_budget(table, inst.budget);
    SdspSolution s;
    s.assignment = backtrack(table, inst, pt, best);
    s.profit = s.assignment.total_profit;
    s.optimal_flag = true;
    s.epsilon = 0.0;
    s.dp_cells = table.cells_computed;
    return s;
}

SdspSolution solve_fptas(const Instance& inst, const PredecessorTable& pt,
                         double epsilon) {
    if (!(epsilon > 0.0) || epsilon >= 1.0) {
        throw std::invalid_argument("epsilon must lie strictly between 0 and 1");
    }
    if (inst.size() == 0) return empty_solution(false, epsilon);

    double max_profit = 0.0;
    bool all_integer = true;
    for (const Delivery& d : inst.deliveries) {
        max_profit = std::max(max_profit, d.profit);
        if (std::floor(d.profit) != d.profit) all_integer = false;
    }
    if (max_profit <= 0.0) return empty_solution(false, epsilon);  // all zero

    const double step = epsilon * max_profit / inst.size();
    Instance scaled = inst;
    if (!(step < 1.0 && all_integer)) {
        // Floor each profit to the grid. When the step is below 1 and the
        // profits are already integers, the unscaled instance is at least as
        // accurate and never larger, so it is used as-is.
        for (Delivery& d : scaled.deliveries) {
            d.profit = std::floor(d.profit / step);
        }
    }

    DpTable table = build_dp_table(scaled, pt);
    const std::int64_t best = best_profit_within_budget(table, scaled.budget);
    Assignment chosen = backtrack(table, scaled, pt, best);

    SdspSolution s;
    s.assignment = make_assignment(inst, chosen.delivery_ids);  // original profits
    s.profit = s.assignment.total_profit;
    s.optimal_flag = false;
    s.epsilon = epsilon;
    s.dp_cells = table.cells_computed;
    return s;
}

}  // namespace dsched
