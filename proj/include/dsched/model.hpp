#pragma once

#include <string>
#include <vector>

namespace dsched {

// One customer delivery. The closed interval [t_launch, t_rendezvous] is the
// span on the truck timeline during which a drone is committed to this
// delivery; cost is the battery energy spent and profit the reward earned.
struct Delivery {
    int id = 0;  // 1-based after canonicalization
    double t_launch = 0.0;
    double t_rendezvous = 0.0;
    double cost = 0.0;
    double profit = 0.0;
};

// Full problem input. Canonical instances (as produced by validate_instance)
// have deliveries sorted by launch time and ids renumbered 1..n.
struct Instance {
    std::vector<Delivery> deliveries;
    double budget = 0.0;  // per-drone battery budget, identical for all drones
    int num_drones = 1;

    int size() const { return static_cast<int>(deliveries.size()); }
    const Delivery& delivery(int id) const {
        return deliveries[static_cast<std::size_t>(id) - 1];
    }
};

// For each delivery j, pred[j] is the highest-indexed earlier delivery whose
// interval ends strictly before delivery j launches (0 when none exists), and
// max_degree is the largest number of other intervals any single interval
// intersects.
struct PredecessorTable {
    std::vector<int> pred;  // indexed 1..n; pred[0] is unused
    int max_degree = 0;
};

// A set of deliveries flown by one drone, with cached totals.
struct Assignment {
    std::vector<int> delivery_ids;  // ascending
    double total_cost = 0.0;
    double total_profit = 0.0;

    bool empty() const { return delivery_ids.empty(); }
    std::size_t size() const { return delivery_ids.size(); }
};

// One assignment per drone; assignments are pairwise disjoint as id sets.
struct Schedule {
    std::vector<Assignment> assignments;
    double total_profit = 0.0;
};

struct ValidationIssue {
    int delivery_id = 0;  // 0 for instance-level issues
    std::string rule;
    std::string message;
};

struct ValidationResult {
    Instance instance;  // canonical; meaningful only when ok()
    std::vector<ValidationIssue> errors;
    std::vector<ValidationIssue> warnings;
    // original_ids[k] is the id delivery k+1 had in the raw input.
    std::vector<int> original_ids;

    bool ok() const { return errors.empty(); }
};

// True iff the two closed delivery intervals do not intersect. Touching
// endpoints count as a conflict.
bool compatible(const Delivery& a, const Delivery& b);

// Checks field invariants, drops deliveries whose cost exceeds the budget
// (with a warning each), sorts by (t_launch, t_rendezvous, id) and renumbers
// ids 1..n. Field violations are reported as errors and leave the result
// unusable.
ValidationResult validate_instance(const Instance& raw);

// Builds the nearest conflict-free predecessor index and the conflict-graph
// maximum degree in O(n log n). Requires a canonical (sorted) instance.
PredecessorTable build_predecessor_table(const Instance& inst);

// Builds an assignment with exact cached totals from a set of delivery ids.
Assignment make_assignment(const Instance& inst, std::vector<int> delivery_ids);

bool assignment_compatible(const Instance& inst, const Assignment& a);
bool assignment_caches_ok(const Instance& inst, const Assignment& a);

// Re-checks every schedule invariant against the instance: per-drone budget
// and pairwise compatibility, disjointness across drones, and cached totals.
// Returns human-readable descriptions of all violations (empty when valid).
std::vector<std::string> schedule_violations(const Instance& inst, const Schedule& s);

}  // namespace dsched
