#include "dsched/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dsched {

namespace {

void require(bool condition, const std::string& message) {
    if (!condition) throw std::invalid_argument(message);
}

void check_common(const GenConfig& c) {
    require(c.n >= 1, "n must be at least 1");
    require(c.num_drones >= 1, "num_drones must be at least 1");
    require(c.profit_lo <= c.profit_hi, "profit range is empty");
    require(c.cost_lo <= c.cost_hi, "cost range is empty");
    require(c.profit_lo >= 0.0, "profits must be nonnegative");
    require(c.cost_lo > 0.0, "costs must be positive");
    require(c.budget_factor > 0.0, "budget_factor must be positive");
    if (c.integer_profits) {
        require(std::ceil(c.profit_lo) <= std::floor(c.profit_hi),
                "profit range contains no integer");
    }
    if (c.integer_costs) {
        require(std::ceil(c.cost_lo) <= std::floor(c.cost_hi),
                "cost range contains no integer");
    }
}

double budget_for(const GenConfig& c, double mean_cost) {
    double per_drone_load =
        std::max(1.0, static_cast<double>(c.n) / c.num_drones);
    return c.budget_factor * mean_cost * per_drone_load;
}

double draw_cost(SplitMix64& rng, const GenConfig& c, double cap) {
    if (c.integer_costs) {
        auto lo = static_cast<std::int64_t>(std::ceil(c.cost_lo));
        auto hi = static_cast<std::int64_t>(std::floor(std::min(c.cost_hi, cap)));
        require(lo <= hi, "budget too small for the integer cost range");
        return static_cast<double>(rng.uniform_int(lo, hi));
    }
    double hi = std::min(c.cost_hi, cap);
    require(c.cost_lo <= hi, "budget too small for the cost range");
    return rng.uniform(c.cost_lo, hi);
}

double draw_profit(SplitMix64& rng, const GenConfig& c) {
    if (c.integer_profits) {
        return static_cast<double>(
            rng.uniform_int(static_cast<std::int64_t>(std::ceil(c.profit_lo)),
                            static_cast<std::int64_t>(std::floor(c.profit_hi))));
    }
    return rng.uniform(c.profit_lo, c.profit_hi);
}

Instance canonicalize(Instance raw, std::vector<int>* order_out = nullptr) {
    ValidationResult vr = validate_instance(raw);
    if (!vr.ok() || !vr.warnings.empty()) {
        throw std::logic_error("generated instance failed validation");
    }
    if (order_out) *order_out = vr.original_ids;
    return std::move(vr.instance);
}

double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Piecewise-linear truck path parameterized by arc length.
class TruckPath {
  public:
    explicit TruckPath(std::vector<Point> waypoints)
        : points_(std::move(waypoints)) {
        cumulative_.push_back(0.0);
        for (std::size_t i = 1; i < points_.size(); ++i) {
            cumulative_.push_back(cumulative_.back() +
                                  dist(points_[i - 1], points_[i]));
        }
    }

    double length() const { return cumulative_.back(); }

    Point at(double s) const {
        s = std::clamp(s, 0.0, length());
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
        std::size_t seg = std::min(points_.size() - 2,
                                   static_cast<std::size_t>(it - cumulative_.begin()) - 1);
        double seg_len = cumulative_[seg + 1] - cumulative_[seg];
        double f = seg_len > 0.0 ? (s - cumulative_[seg]) / seg_len : 0.0;
        return Point{points_[seg].x + f * (points_[seg + 1].x - points_[seg].x),
                     points_[seg].y + f * (points_[seg + 1].y - points_[seg].y)};
    }

    // Unit direction of the segment containing s, for offsetting customers.
    Point direction(double s) const {
        s = std::clamp(s, 0.0, length());
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
        std::size_t seg = std::min(points_.size() - 2,
                                   static_cast<std::size_t>(it - cumulative_.begin()) - 1);
        double seg_len = cumulative_[seg + 1] - cumulative_[seg];
        if (seg_len <= 0.0) return Point{1.0, 0.0};
        return Point{(points_[seg + 1].x - points_[seg].x) / seg_len,
                     (points_[seg + 1].y - points_[seg].y) / seg_len};
    }

  private:
    std::vector<Point> points_;
    std::vector<double> cumulative_;
};

struct Sortie {
    double s_launch = 0.0;
    double s_rendezvous = 0.0;
    Point customer;
    double flight = 0.0;
};

constexpr int kPlacementAttempts = 64;
constexpr int kRendezvousSteps = 512;

// Places one customer: launch point, an off-path customer location, and the
// earliest rendezvous (at or after a drawn candidate) the drone can reach in
// time. The truck never moves back, so the rendezvous is only pushed forward.
bool place_sortie(SplitMix64& rng, const TruckPath& path, const GenConfig& c,
                  double max_cost, Sortie& out) {
    const double total = path.length();
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
        double s_launch = rng.uniform() * 0.80 * total;
        double s_customer = std::min(total, s_launch + (0.02 + 0.08 * rng.uniform()) * total);
        double side = rng.uniform() < 0.5 ? 1.0 : -1.0;
        double radius = (0.02 + 0.10 * rng.uniform()) * total;
        double s_candidate = std::min(total, s_customer + (0.01 + 0.05 * rng.uniform()) * total);

        Point anchor = path.at(s_customer);
        Point dir = path.direction(s_customer);
        Point customer{anchor.x - side * radius * dir.y,
                       anchor.y + side * radius * dir.x};
        Point launch = path.at(s_launch);
        double leg_out = dist(launch, customer);

        bool found = false;
        double s_rendezvous = 0.0, flight = 0.0;
        for (int k = 0; k <= kRendezvousSteps; ++k) {
            double s = s_candidate + (total - s_candidate) * k / kRendezvousSteps;
            double travel = leg_out + dist(customer, path.at(s));
            double window = (s - s_launch) / c.truck_speed;
            if (travel / c.drone_speed <= window) {
                s_rendezvous = s;
                flight = travel;
                found = true;
                break;
            }
        }
        if (!found) continue;
        double cost = c.energy_rate * flight;
        if (cost <= 0.0 || cost > max_cost) continue;
        out = Sortie{s_launch, s_rendezvous, customer, flight};
        return true;
    }
    return false;
}

}  // namespace

Instance generate_random(const GenConfig& c) {
    require(c.mode == GenMode::kRandom, "generate_random requires random mode");
    check_common(c);
    require(c.overlap_density >= 0.0 && c.overlap_density <= 1.0,
            "overlap_density must lie in [0, 1]");

    const double budget = budget_for(c, 0.5 * (c.cost_lo + c.cost_hi));
    const double horizon = static_cast<double>(c.n);
    SplitMix64 rng(c.seed);

    Instance raw;
    raw.budget = budget;
    raw.num_drones = c.num_drones;
    for (int j = 0; j < c.n; ++j) {
        double start, end;
        if (c.overlap_density == 0.0) {
            // Strictly inside per-delivery slots, so intervals never touch.
            start = j + 0.05 + 0.40 * rng.uniform();
            end = start + 0.05 + 0.45 * rng.uniform();
        } else if (c.overlap_density == 1.0) {
            // Everyone straddles the midpoint of the horizon.
            start = rng.uniform() * horizon / 2.0;
            end = horizon / 2.0 + rng.uniform() * horizon / 2.0;
        } else {
            start = rng.uniform() * horizon;
            double mean_len = c.overlap_density * horizon / 2.0;
            end = start + mean_len * (0.5 + rng.uniform());
        }
        Delivery d;
        d.id = j + 1;
        d.t_launch = start;
        d.t_rendezvous = end;
        d.cost = draw_cost(rng, c, budget);
        d.profit = draw_profit(rng, c);
        raw.deliveries.push_back(d);
    }
    return canonicalize(std::move(raw));
}

Instance generate_geometric(const GenConfig& c,
                            std::vector<DeliveryGeometry>& geometry_out) {
    require(c.mode == GenMode::kGeometric,
            "generate_geometric requires geometric mode");
    check_common(c);
    require(c.waypoint_count >= 2, "waypoint_count must be at least 2");
    require(c.truck_speed > 0.0, "truck_speed must be positive");
    require(c.drone_speed > 0.0, "drone_speed must be positive");
    require(c.energy_rate > 0.0, "energy_rate must be positive");

    SplitMix64 rng(c.seed);
    std::vector<Point> waypoints{Point{0.0, 0.0}};
    for (int i = 1; i < c.waypoint_count; ++i) {
        double dx = 20.0 + 60.0 * rng.uniform();
        double dy = (2.0 * rng.uniform() - 1.0) * 30.0;
        waypoints.push_back(Point{waypoints.back().x + dx, waypoints.back().y + dy});
    }
    TruckPath path(std::move(waypoints));

    std::vector<Sortie> sorties(static_cast<std::size_t>(c.n));
    double cost_sum = 0.0;
    for (int j = 0; j < c.n; ++j) {
        if (!place_sortie(rng, path, c, std::numeric_limits<double>::max(),
                          sorties[static_cast<std::size_t>(j)])) {
            throw std::invalid_argument(
                "could not place customer " + std::to_string(j + 1) +
                "; the drone cannot reach any rendezvous in time");
        }
        cost_sum += c.energy_rate * sorties[static_cast<std::size_t>(j)].flight;
    }

    // Budget from observed costs; sorties it cannot afford are re-placed.
    const double budget = budget_for(c, cost_sum / c.n);
    for (int j = 0; j < c.n; ++j) {
        Sortie& s = sorties[static_cast<std::size_t>(j)];
        if (c.energy_rate * s.flight <= budget) continue;
        if (!place_sortie(rng, path, c, budget / c.energy_rate, s)) {
            throw std::invalid_argument(
                "budget too tight for customer " + std::to_string(j + 1) +
                "; raise budget_factor");
        }
    }

    double max_flight = 0.0;
    for (const Sortie& s : sorties) max_flight = std::max(max_flight, s.flight);

    Instance raw;
    raw.budget = budget;
    raw.num_drones = c.num_drones;
    std::vector<DeliveryGeometry> raw_geometry;
    for (int j = 0; j < c.n; ++j) {
        const Sortie& s = sorties[static_cast<std::size_t>(j)];
        Delivery d;
        d.id = j + 1;
        d.t_launch = s.s_launch / c.truck_speed;
        d.t_rendezvous = s.s_rendezvous / c.truck_speed;
        d.cost = c.energy_rate * s.flight;
        if (c.profit_mode == ProfitMode::kDistanceCorrelated) {
            double f = max_flight > 0.0 ? s.flight / max_flight : 0.0;
            double p = c.profit_lo + (c.profit_hi - c.profit_lo) * f;
            if (c.integer_profits) {
                p = std::clamp(static_cast<double>(std::llround(p)),
                               std::ceil(c.profit_lo), std::floor(c.profit_hi));
            }
            d.profit = p;
        } else {
            d.profit = draw_profit(rng, c);
        }
        raw.deliveries.push_back(d);
        raw_geometry.push_back(DeliveryGeometry{
            path.at(s.s_launch), s.customer, path.at(s.s_rendezvous), s.flight});
    }

    std::vector<int> order;
    Instance inst = canonicalize(std::move(raw), &order);
    geometry_out.clear();
    for (int original : order) {
        geometry_out.push_back(raw_geometry[static_cast<std::size_t>(original - 1)]);
    }
    return inst;
}

Instance generate_geometric(const GenConfig& c) {
    std::vector<DeliveryGeometry> unused;
    return generate_geometric(c, unused);
}

Instance generate(const GenConfig& c) {
    return c.mode == GenMode::kRandom ? generate_random(c) : generate_geometric(c);
}

}  // namespace dsched
