#include "dsched/mdsp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dsched {

std::vector<int> density_order(const Instance& inst) {
    const int n = inst.size();
    std::vector<int> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 1);
    std::vector<double> density(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        const Delivery& d = inst.delivery(j);
        density[static_cast<std::size_t>(j - 1)] = d.profit / d.cost;
    }
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        double da = density[static_cast<std::size_t>(a - 1)];
        double db = density[static_cast<std::size_t>(b - 1)];
        if (da != db) return da > db;
        double pa = inst.delivery(a).profit;
        double pb = inst.delivery(b).profit;
        if (pa != pb) return pa > pb;
        return a < b;
    });
    return ids;
}

Assignment moderate_critical(const Instance& inst, const Assignment& assignment,
                             int last_id, double budget) {
    const Delivery& last = inst.delivery(last_id);
    bool has_last = std::find(assignment.delivery_ids.begin(),
                              assignment.delivery_ids.end(),
                              last_id) != assignment.delivery_ids.end();
    const double slack = 1e-9 * std::max(1.0, std::abs(budget));
    if (!has_last || assignment.total_cost <= budget ||
        assignment.total_cost - last.cost > budget + slack) {
        throw std::logic_error("moderate_critical called on a non-critical assignment");
    }

    double rest_profit = assignment.total_profit - last.profit;
    if (rest_profit >= last.profit) {
        std::vector<int> rest(assignment.delivery_ids);
        rest.erase(std::remove(rest.begin(), rest.end(), last_id), rest.end());
        return make_assignment(inst, std::move(rest));
    }
    return make_assignment(inst, {last_id});
}

Schedule select_top_m(const std::vector<Assignment>& slots, int m) {
    std::vector<int> idx(slots.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return slots[static_cast<std::size_t>(a)].total_profit >
               slots[static_cast<std::size_t>(b)].total_profit;
    });
    Schedule s;
    const int take = std::min<int>(m, static_cast<int>(slots.size()));
    for (int i = 0; i < take; ++i) {
        s.assignments.push_back(slots[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
        s.total_profit += s.assignments.back().total_profit;
    }
    // An instance can never under-fill the drone fleet from the caller's view.
    while (static_cast<int>(s.assignments.size()) < m) s.assignments.emplace_back();
    return s;
}

MdspSolution solve_greedy_mdsp(const Instance& inst, const PredecessorTable& pt,
                               SlotStrategy strategy) {
    const int m = inst.num_drones;
    const int slot_count = m + pt.max_degree;
    const double budget = inst.budget;

    MdspSolution sol;
    sol.ratio_bound = static_cast<double>(m) / (2.0 * slot_count);
    sol.trace.density_order = density_order(inst);
    sol.trace.slots.assign(static_cast<std::size_t>(slot_count), SlotState{});

    auto& slots = sol.trace.slots;
    int critical_count = 0;
    std::size_t consumed = 0;

    for (std::size_t idx = 0; idx < sol.trace.density_order.size(); ++idx) {
        if (critical_count == m) {
            sol.trace.stopped_early = true;
            break;
        }
        const int j = sol.trace.density_order[idx];
        const Delivery& d = inst.delivery(j);

        int chosen = -1;
        for (int i = 0; i < slot_count; ++i) {
            SlotState& slot = slots[static_cast<std::size_t>(i)];
            if (slot.critical) continue;
            bool ok = true;
            for (int id : slot.delivery_ids) {
                ++sol.compat_checks;
                if (!compatible(d, inst.delivery(id))) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            if (strategy == SlotStrategy::kFirstIndex) {
                chosen = i;
                break;
            }
            if (chosen < 0 ||
                slot.cost > slots[static_cast<std::size_t>(chosen)].cost) {
                chosen = i;
            }
        }
        if (chosen < 0) {
            // With fewer than m critical slots there are always at least
            // max_degree + 1 open ones, and the delivery conflicts with at
            // most max_degree of them. Reaching this line means the degree
            // index or the compatibility predicate is broken.
            throw std::logic_error("no compatible open slot for delivery " +
                                   std::to_string(j));
        }

        SlotState& slot = slots[static_cast<std::size_t>(chosen)];
        slot.delivery_ids.push_back(j);
        slot.cost += d.cost;
        slot.profit += d.profit;
        ++consumed;
        if (slot.cost > budget) {
            slot.critical = true;
            slot.last_id = j;
            ++critical_count;
        }
    }
    sol.trace.consumed = consumed;
    sol.trace.dropped.assign(sol.trace.density_order.begin() + static_cast<std::ptrdiff_t>(consumed),
                             sol.trace.density_order.end());

    std::vector<Assignment> finals(static_cast<std::size_t>(slot_count));
    for (int i = 0; i < slot_count; ++i) {
        const SlotState& slot = slots[static_cast<std::size_t>(i)];
        Assignment full;
        full.delivery_ids = slot.delivery_ids;
        std::sort(full.delivery_ids.begin(), full.delivery_ids.end());
        full.total_cost = slot.cost;
        full.total_profit = slot.profit;
        if (slot.critical) {
            Assignment kept = moderate_critical(inst, full, slot.last_id, budget);
            sol.trace.moderations.push_back(ModerationRecord{
                i, full.total_profit, kept.total_profit,
                kept.delivery_ids.size() != 1 ||
                    kept.delivery_ids.front() != slot.last_id});
            finals[static_cast<std::size_t>(i)] = std::move(kept);
        } else {
            finals[static_cast<std::size_t>(i)] = std::move(full);
        }
    }

    sol.schedule = select_top_m(finals, m);
    sol.total_profit = sol.schedule.total_profit;
    return sol;
}

}  // namespace dsched
