#pragma once

#include <cstdint>

#include "dsched/model.hpp"

namespace dsched {

struct OracleOptions {
    std::uint64_t node_limit = 50'000'000;
    // Both toggles exist so that the search can be cross-checked against
    // itself; disabling them only makes it slower, never changes the optimum.
    bool use_bound = true;
    bool use_symmetry_breaking = true;
};

struct OracleResult {
    Schedule schedule;
    double opt_profit = 0.0;
    std::uint64_t nodes_explored = 0;
    bool timed_out = false;  // node limit hit; opt_profit is only a lower bound
};

// Exact maximum-profit schedule by depth-first search over the deliveries in
// density order. At each delivery the search skips it or assigns it to any
// drone whose load stays compatible and within budget; identical empty drones
// are tried at most once per node, and subtrees are pruned with a fractional
// relaxation of the remaining deliveries against the pooled leftover budget.
// Intended for small instances (n up to ~20).
OracleResult solve_exact(const Instance& inst, const OracleOptions& opts = {});

}  // namespace dsched
