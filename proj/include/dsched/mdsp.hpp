#pragma once

#include <cstdint>
#include <vector>

#include "dsched/model.hpp"

namespace dsched {

// How the greedy loop picks among the open slots compatible with a delivery.
// Any choice preserves the approximation guarantee; best-fit concentrates
// load and tends to reach critical slots sooner.
enum class SlotStrategy {
    kBestFit,     // compatible open slot with the largest current cost
    kFirstIndex,  // lowest-indexed compatible open slot
};

// Snapshot of one drone slot at the end of the assignment loop, before
// critical slots are moderated.
struct SlotState {
    std::vector<int> delivery_ids;  // in assignment order; last one made it critical
    double cost = 0.0;
    double profit = 0.0;
    int last_id = 0;  // delivery that pushed the slot over budget, 0 if none
    bool critical = false;
};

struct ModerationRecord {
    int slot = 0;  // 0-based slot index
    double profit_before = 0.0;
    double profit_after = 0.0;
    bool dropped_last = false;  // true: kept the rest; false: kept only the last
};

// Everything observable about one greedy run, for diagnostics and checks.
struct GreedyTrace {
    std::vector<int> density_order;  // delivery ids, densest first
    std::size_t consumed = 0;        // prefix of density_order that was assigned
    bool stopped_early = false;      // the critical-slot quota was reached
    std::vector<SlotState> slots;    // all m + max_degree slots, pre-moderation
    std::vector<ModerationRecord> moderations;
    std::vector<int> dropped;        // ids never considered after the early stop
};

struct MdspSolution {
    Schedule schedule;  // the num_drones most profitable slots
    double total_profit = 0.0;
    double ratio_bound = 0.0;          // m / (2 (m + max_degree))
    std::uint64_t compat_checks = 0;   // interval-pair comparisons performed
    GreedyTrace trace;
};

// Delivery ids sorted by profit/cost ratio descending; ties broken by higher
// profit, then lower id.
std::vector<int> density_order(const Instance& inst);

// Repairs a critical assignment (cost above budget, feasible again once its
// last delivery is removed): keeps whichever of (all but last) and (last
// alone) has the larger profit, dropping the last on ties. The result always
// retains at least half the critical assignment's profit.
Assignment moderate_critical(const Instance& inst, const Assignment& assignment,
                             int last_id, double budget);

// The m most profitable assignments (ties by slot index), ordered by profit.
Schedule select_top_m(const std::vector<Assignment>& slots, int m);

// Density-greedy approximation for m drones. Runs m + max_degree slots, fills
// them in density order until m slots have gone critical, moderates the
// critical slots, and returns the m most profitable. The returned profit is
// at least ratio_bound times the optimum. O(n^2) time.
MdspSolution solve_greedy_mdsp(const Instance& inst, const PredecessorTable& pt,
                               SlotStrategy strategy = SlotStrategy::kBestFit);

}  // namespace dsched
