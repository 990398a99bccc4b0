#include "dsched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dsched/mdsp.hpp"

namespace dsched {

namespace {

class Search {
  public:
    Search(const Instance& inst, const OracleOptions& opts)
        : inst_(inst),
          opts_(opts),
          order_(density_order(inst)),
          loads_(static_cast<std::size_t>(inst.num_drones)),
          costs_(static_cast<std::size_t>(inst.num_drones), 0.0) {}

    OracleResult run() {
        best_profit_ = 0.0;
        best_loads_.assign(loads_.size(), {});
        dfs(0);

        OracleResult result;
        result.nodes_explored = nodes_;
        result.timed_out = timed_out_;
        for (const auto& ids : best_loads_) {
            result.schedule.assignments.push_back(
                make_assignment(inst_, std::vector<int>(ids.begin(), ids.end())));
        }
        for (const Assignment& a : result.schedule.assignments) {
            result.schedule.total_profit += a.total_profit;
        }
        result.opt_profit = result.schedule.total_profit;
        return result;
    }

  private:
    void dfs(std::size_t depth) {
        if (timed_out_) return;
        if (++nodes_ > opts_.node_limit) {
            timed_out_ = true;
            return;
        }
        if (profit_ > best_profit_) {
            best_profit_ = profit_;
            best_loads_ = loads_;
        }
        if (depth == order_.size()) return;
        if (opts_.use_bound) {
            double slack = 1e-9 * std::max(1.0, std::abs(best_profit_));
            if (upper_bound(depth) <= best_profit_ - slack) return;
        }

        const Delivery& d = inst_.delivery(order_[depth]);
        bool tried_empty = false;
        for (std::size_t i = 0; i < loads_.size(); ++i) {
            if (loads_[i].empty()) {
                if (opts_.use_symmetry_breaking && tried_empty) continue;
                tried_empty = true;
            }
            if (costs_[i] + d.cost > inst_.budget) continue;
            if (!fits(i, d)) continue;

            loads_[i].push_back(d.id);
            costs_[i] += d.cost;
            used_ += d.cost;
            profit_ += d.profit;
            dfs(depth + 1);
            loads_[i].pop_back();
            costs_[i] -= d.cost;
            used_ -= d.cost;
            profit_ -= d.profit;
        }
        dfs(depth + 1);  // skip this delivery
    }

    bool fits(std::size_t drone, const Delivery& d) const {
        for (int id : loads_[drone]) {
            if (!compatible(d, inst_.delivery(id))) return false;
        }
        return true;
    }

    // Fractional relaxation: drop the conflict and per-drone constraints and
    // pack the remaining deliveries (already density-sorted) into the pooled
    // leftover budget, splitting the last one.
    double upper_bound(std::size_t depth) const {
        double capacity = static_cast<double>(inst_.num_drones) * inst_.budget - used_;
        double bound = profit_;
        for (std::size_t t = depth; t < order_.size() && capacity > 0.0; ++t) {
            const Delivery& d = inst_.delivery(order_[t]);
            if (d.cost <= capacity) {
                bound += d.profit;
                capacity -= d.cost;
            } else {
                bound += d.profit * (capacity / d.cost);
                break;
            }
        }
        return bound;
    }

    const Instance& inst_;
    const OracleOptions& opts_;
    std::vector<int> order_;
    std::vector<std::vector<int>> loads_;
    std::vector<double> costs_;
    double used_ = 0.0;
    double profit_ = 0.0;
    double best_profit_ = 0.0;
    std::vector<std::vector<int>> best_loads_;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

}  // namespace

OracleResult solve_exact(const Instance& inst, const OracleOptions& opts) {
    if (opts.node_limit == 0) {
        throw std::invalid_argument("node_limit must be positive");
    }
    return Search(inst, opts).run();
}

}  // namespace dsched
