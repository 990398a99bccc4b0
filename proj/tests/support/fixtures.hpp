#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "dsched/generator.hpp"
#include "dsched/model.hpp"

namespace testutil {

// Builds a canonical instance from {launch, rendezvous, cost, profit} rows.
// Rows may be given in any order; validation sorts and renumbers them.
inline dsched::Instance make_instance(
    std::vector<std::array<double, 4>> rows, double budget, int drones = 1) {
    dsched::Instance raw;
    raw.budget = budget;
    raw.num_drones = drones;
    int id = 0;
    for (const auto& r : rows) {
        dsched::Delivery d;
        d.id = ++id;
        d.t_launch = r[0];
        d.t_rendezvous = r[1];
        d.cost = r[2];
        d.profit = r[3];
        raw.deliveries.push_back(d);
    }
    dsched::ValidationResult vr = dsched::validate_instance(raw);
    if (!vr.ok()) throw std::runtime_error("fixture instance failed validation");
    return vr.instance;
}

// Small seeded instance stream shared by the property tests.
inline dsched::Instance random_instance(std::uint64_t seed, int n, int drones,
                                        bool integer_values,
                                        double budget_factor = 0.5) {
    dsched::GenConfig cfg;
    cfg.seed = seed;
    cfg.n = n;
    cfg.num_drones = drones;
    cfg.mode = dsched::GenMode::kRandom;
    cfg.integer_profits = integer_values;
    cfg.integer_costs = integer_values;
    cfg.profit_lo = integer_values ? 1.0 : 0.5;
    cfg.profit_hi = integer_values ? 20.0 : 25.0;
    cfg.cost_lo = 1.0;
    cfg.cost_hi = 10.0;
    cfg.budget_factor = budget_factor;
    cfg.overlap_density = (seed % 5) / 4.0;
    return dsched::generate(cfg);
}

}  // namespace testutil
