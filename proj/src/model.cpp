#include "dsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace dsched {

bool compatible(const Delivery& a, const Delivery& b) {
    return a.t_rendezvous < b.t_launch || b.t_rendezvous < a.t_launch;
}

namespace {

bool finite(double v) { return std::isfinite(v); }

void add_issue(std::vector<ValidationIssue>& out, int id, std::string rule,
               std::string message) {
    out.push_back(ValidationIssue{id, std::move(rule), std::move(message)});
}

}  // namespace

ValidationResult validate_instance(const Instance& raw) {
    ValidationResult result;
    auto& errors = result.errors;

    if (!finite(raw.budget) || raw.budget <= 0.0) {
        add_issue(errors, 0, "budget", "budget must be a positive finite number");
    }
    if (raw.num_drones < 1) {
        add_issue(errors, 0, "drones", "number of drones must be at least 1");
    }

    std::unordered_set<int> seen_ids;
    for (const Delivery& d : raw.deliveries) {
        if (!finite(d.t_launch) || !finite(d.t_rendezvous) || !finite(d.cost) ||
            !finite(d.profit)) {
            add_issue(errors, d.id, "nonfinite", "delivery has a non-finite field");
            continue;
        }
        if (d.t_launch > d.t_rendezvous) {
            add_issue(errors, d.id, "interval",
                      "launch time is after rendezvous time");
        }
        if (d.cost < 0.0) {
            add_issue(errors, d.id, "negative-cost", "cost must be positive");
        } else if (d.cost == 0.0) {
            add_issue(errors, d.id, "zero-cost", "cost must be positive");
        }
        if (d.profit < 0.0) {
            add_issue(errors, d.id, "negative-profit", "profit must be nonnegative");
        }
        if (!seen_ids.insert(d.id).second) {
            add_issue(errors, d.id, "duplicate-id", "delivery id appears twice");
        }
    }
    if (!errors.empty()) return result;

    std::vector<Delivery> kept;
    kept.reserve(raw.deliveries.size());
    for (const Delivery& d : raw.deliveries) {
        if (d.cost > raw.budget) {
            std::ostringstream msg;
            msg << "delivery " << d.id << " dropped: cost " << d.cost
                << " exceeds budget " << raw.budget;
            add_issue(result.warnings, d.id, "over-budget", msg.str());
        } else {
            kept.push_back(d);
        }
    }

    std::stable_sort(kept.begin(), kept.end(),
                     [](const Delivery& a, const Delivery& b) {
                         if (a.t_launch != b.t_launch) return a.t_launch < b.t_launch;
                         if (a.t_rendezvous != b.t_rendezvous)
                             return a.t_rendezvous < b.t_rendezvous;
                         return a.id < b.id;
                     });

    result.instance.budget = raw.budget;
    result.instance.num_drones = raw.num_drones;
    result.instance.deliveries = std::move(kept);
    result.original_ids.reserve(result.instance.deliveries.size());
    int next_id = 1;
    for (Delivery& d : result.instance.deliveries) {
        result.original_ids.push_back(d.id);
        d.id = next_id++;
    }
    return result;
}

PredecessorTable build_predecessor_table(const Instance& inst) {
    const int n = inst.size();
    PredecessorTable pt;
    pt.pred.assign(static_cast<std::size_t>(n) + 1, 0);
    if (n == 0) return pt;

    // Deliveries are sorted by launch time, so any k whose interval ends
    // strictly before delivery j launches also launches earlier and hence has
    // k < j. Sweep rendezvous times in ascending order, activating indices as
    // their end times fall below the current launch, and keep the largest
    // activated index.
    std::vector<int> by_rendezvous(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) by_rendezvous[static_cast<std::size_t>(i)] = i;
    std::sort(by_rendezvous.begin(), by_rendezvous.end(), [&](int a, int b) {
        double ra = inst.deliveries[static_cast<std::size_t>(a)].t_rendezvous;
        double rb = inst.deliveries[static_cast<std::size_t>(b)].t_rendezvous;
        if (ra != rb) return ra < rb;
        return a < b;
    });

    int ptr = 0;
    int running_max = 0;
    for (int j = 1; j <= n; ++j) {
        const double launch = inst.delivery(j).t_launch;
        while (ptr < n &&
               inst.deliveries[static_cast<std::size_t>(by_rendezvous[static_cast<std::size_t>(ptr)])]
                       .t_rendezvous < launch) {
            running_max = std::max(running_max, by_rendezvous[static_cast<std::size_t>(ptr)] + 1);
            ++ptr;
        }
        pt.pred[static_cast<std::size_t>(j)] = running_max;
    }

    // Degree of interval j = n - 1 - (#intervals ending before it starts)
    //                              - (#intervals starting after it ends).
    std::vector<double> launches(static_cast<std::size_t>(n));
    std::vector<double> ends(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        launches[static_cast<std::size_t>(i)] = inst.deliveries[static_cast<std::size_t>(i)].t_launch;
        ends[static_cast<std::size_t>(i)] = inst.deliveries[static_cast<std::size_t>(i)].t_rendezvous;
    }
    std::sort(ends.begin(), ends.end());

    int max_degree = 0;
    for (const Delivery& d : inst.deliveries) {
        auto before = std::lower_bound(ends.begin(), ends.end(), d.t_launch) - ends.begin();
        auto after = launches.end() -
                     std::upper_bound(launches.begin(), launches.end(), d.t_rendezvous);
        int degree = n - 1 - static_cast<int>(before) - static_cast<int>(after);
        max_degree = std::max(max_degree, degree);
    }
    pt.max_degree = max_degree;
    return pt;
}

Assignment make_assignment(const Instance& inst, std::vector<int> delivery_ids) {
    std::sort(delivery_ids.begin(), delivery_ids.end());
    Assignment a;
    a.delivery_ids = std::move(delivery_ids);
    for (int id : a.delivery_ids) {
        a.total_cost += inst.delivery(id).cost;
        a.total_profit += inst.delivery(id).profit;
    }
    return a;
}

bool assignment_compatible(const Instance& inst, const Assignment& a) {
    for (std::size_t i = 0; i < a.delivery_ids.size(); ++i) {
        for (std::size_t j = i + 1; j < a.delivery_ids.size(); ++j) {
            if (!compatible(inst.delivery(a.delivery_ids[i]),
                            inst.delivery(a.delivery_ids[j]))) {
                return false;
            }
        }
    }
    return true;
}

bool assignment_caches_ok(const Instance& inst, const Assignment& a) {
    double cost = 0.0, profit = 0.0;
    for (int id : a.delivery_ids) {
        cost += inst.delivery(id).cost;
        profit += inst.delivery(id).profit;
    }
    auto close = [](double x, double y) {
        double scale = std::max({1.0, std::abs(x), std::abs(y)});
        return std::abs(x - y) <= 1e-9 * scale;
    };
    return close(cost, a.total_cost) && close(profit, a.total_profit);
}

std::vector<std::string> schedule_violations(const Instance& inst, const Schedule& s) {
    std::vector<std::string> out;
    if (s.assignments.size() > static_cast<std::size_t>(inst.num_drones)) {
        out.push_back("schedule has more assignments than drones");
    }
    std::unordered_set<int> used;
    double profit_sum = 0.0;
    for (std::size_t i = 0; i < s.assignments.size(); ++i) {
        const Assignment& a = s.assignments[i];
        std::string tag = "drone " + std::to_string(i + 1);
        if (!assignment_caches_ok(inst, a)) {
            out.push_back(tag + ": cached totals disagree with recomputation");
        }
        if (a.total_cost > inst.budget * (1.0 + 1e-12)) {
            out.push_back(tag + ": cost exceeds budget");
        }
        if (!assignment_compatible(inst, a)) {
            out.push_back(tag + ": contains conflicting intervals");
        }
        for (int id : a.delivery_ids) {
            if (id < 1 || id > inst.size()) {
                out.push_back(tag + ": unknown delivery id " + std::to_string(id));
            } else if (!used.insert(id).second) {
                out.push_back("delivery " + std::to_string(id) +
                              " assigned to more than one drone");
            }
        }
        profit_sum += a.total_profit;
    }
    double scale = std::max({1.0, std::abs(profit_sum), std::abs(s.total_profit)});
    if (std::abs(profit_sum - s.total_profit) > 1e-9 * scale) {
        out.push_back("schedule total_profit disagrees with per-drone sum");
    }
    return out;
}

}  // namespace dsched
