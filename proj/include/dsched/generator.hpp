#pragma once

#include <cstdint>
#include <vector>

#include "dsched/model.hpp"

namespace dsched {

// Deterministic 64-bit stream (SplitMix64). The generator is pinned to this
// exact scheme, rather than a platform RNG, so that a (seed, config) pair
// yields the same instance on every platform and in any reimplementation.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi], both inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::uint64_t state_;
};

enum class GenMode { kRandom, kGeometric };
enum class ProfitMode { kUniform, kDistanceCorrelated };

struct GenConfig {
    std::uint64_t seed = 1;
    int n = 10;
    GenMode mode = GenMode::kRandom;
    int num_drones = 1;

    double profit_lo = 1.0;
    double profit_hi = 10.0;
    double cost_lo = 1.0;
    double cost_hi = 10.0;
    bool integer_profits = false;
    bool integer_costs = false;

    // Budget is budget_factor * mean cost * expected per-drone load (n/m).
    double budget_factor = 0.5;

    // Random mode: 0 gives pairwise-disjoint intervals, 1 gives a common
    // point shared by all; in between, interval lengths are tuned so the
    // expected conflict degree tracks the value.
    double overlap_density = 0.5;

    // Geometric mode.
    int waypoint_count = 4;
    double truck_speed = 1.0;
    double drone_speed = 2.5;
    double energy_rate = 1.0;
    ProfitMode profit_mode = ProfitMode::kUniform;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Geometry behind one generated delivery, for inspection and checks.
struct DeliveryGeometry {
    Point launch;
    Point customer;
    Point rendezvous;
    double flight_distance = 0.0;  // launch -> customer -> rendezvous
};

// Dispatches on config.mode. All modes return a canonical instance that
// passes validation with no warnings. Configuration problems throw
// std::invalid_argument.
Instance generate(const GenConfig& config);

Instance generate_random(const GenConfig& config);

Instance generate_geometric(const GenConfig& config);

// As generate_geometric, additionally reporting the launch/customer/
// rendezvous geometry per canonical delivery id.
Instance generate_geometric(const GenConfig& config,
                            std::vector<DeliveryGeometry>& geometry_out);

}  // namespace dsched
