// Release gate: nine independent checks, one per documented guarantee of the
// library. Each prints a single [PASS]/[FAIL] line with a short summary of
// the evidence; the binary exits nonzero if any check fails. Ground truth
// comes from the naive enumerators in support/brute_force.hpp, never from the
// code under test.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dsched/generator.hpp"
#include "dsched/mdsp.hpp"
#include "dsched/model.hpp"
#include "dsched/oracle.hpp"
#include "dsched/sdsp.hpp"
#include "support/brute_force.hpp"
#include "support/subprocess.hpp"

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

int g_failed = 0;

void report(int id, const char* name, const Outcome& outcome) {
    std::printf("[%s] criterion %d - %s", outcome.ok ? "PASS" : "FAIL", id, name);
    if (!outcome.detail.empty()) std::printf(" (%s)", outcome.detail.c_str());
    std::printf("\n");
    std::fflush(stdout);
    if (!outcome.ok) ++g_failed;
}

// Instances kept around so later checks can reuse them.
struct StoredSdsp {
    dsched::Instance inst;
    double dp_profit = 0.0;
};
std::vector<StoredSdsp> g_suite1;
std::vector<dsched::Instance> g_suite2;
std::vector<dsched::Instance> g_suite4;
std::vector<dsched::ModerationRecord> g_moderations;

// Blanket feasibility accounting: every schedule any suite produces goes
// through schedule_violations, whichever algorithm produced it.
std::uint64_t g_feasibility_checks = 0;
std::uint64_t g_feasibility_failures = 0;

void blanket(const dsched::Instance& inst, const dsched::Schedule& schedule) {
    ++g_feasibility_checks;
    if (!dsched::schedule_violations(inst, schedule).empty()) {
        ++g_feasibility_failures;
    }
}

dsched::Schedule as_schedule(const dsched::Assignment& a) {
    dsched::Schedule s;
    s.assignments.push_back(a);
    s.total_profit = a.total_profit;
    return s;
}

// criterion 1: the profit-indexed dp must reproduce the exhaustive optimum
// exactly on integer-valued single-drone instances.
Outcome criterion1() {
    const double factors[] = {0.25, 0.4, 0.6, 0.9};
    int mismatches = 0;
    for (int t = 0; t < 500; ++t) {
        dsched::GenConfig cfg;
        cfg.seed = 1000 + static_cast<std::uint64_t>(t);
        cfg.n = 8 + t % 7;
        cfg.num_drones = 1;
        cfg.integer_profits = true;
        cfg.integer_costs = true;
        cfg.profit_lo = 1.0;
        cfg.profit_hi = 50.0;
        cfg.cost_lo = 1.0;
        cfg.cost_hi = 20.0;
        cfg.budget_factor = factors[t % 4];
        cfg.overlap_density = (t % 5) / 4.0;

        dsched::Instance inst = dsched::generate(cfg);
        dsched::PredecessorTable pt = dsched::build_predecessor_table(inst);
        dsched::SdspSolution sol = dsched::solve_dp_exact(inst, pt);
        blanket(inst, as_schedule(sol.assignment));
        if (sol.profit != brute::sdsp_opt(inst)) ++mismatches;
        g_suite1.push_back({std::move(inst), sol.profit});
    }
    return {mismatches == 0,
            "500 instances, n in [8,14], " + std::to_string(mismatches) +
                " mismatches at tolerance 0"};
}

// criterion 2: fptas profit >= (1 - eps) * optimum for each tested epsilon.
Outcome criterion2() {
    const double factors[] = {0.25, 0.4, 0.6, 0.9};
    const double epsilons[] = {0.1, 0.25, 0.5, 0.9};
    int violations = 0;
    int comparisons = 0;
    for (int t = 0; t < 500; ++t) {
        dsched::GenConfig cfg;
        cfg.seed = 2000 + static_cast<std::uint64_t>(t);
        cfg.n = 8 + t % 7;
        cfg.num_drones = 1;
        cfg.profit_lo = 0.5;
        cfg.profit_hi = 30.0;
        cfg.cost_lo = 1.0;
        cfg.cost_hi = 10.0;
        cfg.budget_factor = factors[t % 4];
        cfg.overlap_density = (t % 5) / 4.0;

        dsched::Instance inst = dsched::generate(cfg);
        dsched::PredecessorTable pt = dsched::build_predecessor_table(inst);
        double opt = brute::sdsp_opt(inst);
        double slack = 1e-9 * std::max(1.0, opt);
        for (double eps : epsilons) {
            dsched::SdspSolution sol = dsched::solve_fptas(inst, pt, eps);
            blanket(inst, as_schedule(sol.assignment));
            ++comparisons;
            if (sol.profit + slack < (1.0 - eps) * opt) ++violations;
            if (sol.profit > opt + slack) ++violations;  // never above optimal
        }
        g_suite2.push_back(std::move(inst));
    }
    return {violations == 0,
            std::to_string(comparisons) + " comparisons across eps {0.1, 0.25, "
                                          "0.5, 0.9}, " +
                std::to_string(violations) + " bound violations"};
}

// criterion 3: the fptas inner-loop counter scales like n^2 * floor(n / eps).
// Constants cancel, so the measured ratios between configurations must land
// within 2x of the predicted ones. Wall clock is informational only.
Outcome criterion3() {
    struct Config {
        int n;
        double eps;
    };
    const Config configs[] = {{20, 0.5}, {40, 0.5}, {40, 0.25}};
    double cells[3] = {0, 0, 0};
    double millis[3] = {0, 0, 0};
    const int kSeeds = 5;

    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < kSeeds; ++i) {
            dsched::GenConfig cfg;
            cfg.seed = 3000 + static_cast<std::uint64_t>(10 * c + i);
            cfg.n = configs[c].n;
            cfg.num_drones = 1;
            cfg.profit_lo = 0.5;
            cfg.profit_hi = 30.0;
            dsched::Instance inst = dsched::generate(cfg);
            dsched::PredecessorTable pt = dsched::build_predecessor_table(inst);
            auto t0 = std::chrono::steady_clock::now();
            dsched::SdspSolution sol =
                dsched::solve_fptas(inst, pt, configs[c].eps);
            auto t1 = std::chrono::steady_clock::now();
            blanket(inst, as_schedule(sol.assignment));
            cells[c] += static_cast<double>(sol.dp_cells) / kSeeds;
            millis[c] +=
                std::chrono::duration<double, std::milli>(t1 - t0).count() /
                kSeeds;
        }
    }

    auto predicted = [](const Config& cfg) {
        return static_cast<double>(cfg.n) * cfg.n *
               std::floor(cfg.n / cfg.eps);
    };
    // n doubles at fixed eps, then eps halves at fixed n.
    double measured_n = cells[1] / cells[0];
    double predicted_n = predicted(configs[1]) / predicted(configs[0]);
    double measured_eps = cells[2] / cells[1];
    double predicted_eps = predicted(configs[2]) / predicted(configs[1]);
    bool ok = measured_n >= predicted_n / 2 && measured_n <= predicted_n * 2 &&
              measured_eps >= predicted_eps / 2 &&
              measured_eps <= predicted_eps * 2;

    std::ostringstream detail;
    detail.precision(3);
    detail << "n-doubling ratio " << measured_n << " vs " << predicted_n
           << " predicted, eps-halving ratio " << measured_eps << " vs "
           << predicted_eps << " predicted; wall clock ms per solve: "
           << millis[0] << " / " << millis[1] << " / " << millis[2];
    return {ok, detail.str()};
}

// criterion 4: greedy profit >= m / (2 (m + max_degree)) * optimum on every
// instance, and >= optimum / 4 whenever m >= max_degree. The optimum comes
// from the branch-and-bound search, cross-checked elsewhere.
Outcome criterion4() {
    const double factors[] = {0.3, 0.5, 0.8, 1.2};
    int violations = 0;
    int quarter_cases = 0;
    int timeouts = 0;
    for (int t = 0; t < 300; ++t) {
        dsched::GenConfig cfg;
        cfg.seed = 4000 + static_cast<std::uint64_t>(t);
        cfg.n = 6 + t % 7;
        cfg.num_drones = 1 + t % 3;
        cfg.integer_profits = true;
        cfg.integer_costs = true;
        cfg.profit_lo = 1.0;
        cfg.profit_hi = 40.0;
        cfg.cost_lo = 1.0;
        cfg.cost_hi = 15.0;
        cfg.budget_factor = factors[t % 4];
        cfg.overlap_density = (t % 5) / 4.0;

        dsched::Instance inst = dsched::generate(cfg);
        dsched::PredecessorTable pt = dsched::build_predecessor_table(inst);
        dsched::MdspSolution sol = dsched::solve_greedy_mdsp(inst, pt);
        blanket(inst, sol.schedule);
        for (const dsched::ModerationRecord& r : sol.trace.moderations) {
            g_moderations.push_back(r);
        }

        dsched::OracleResult oracle = dsched::solve_exact(inst);
        blanket(inst, oracle.schedule);
        if (oracle.timed_out) {
            ++timeouts;
            ++violations;  // the suite is sized so this must not happen
            continue;
        }
        int delta = brute::max_degree(inst);
        int m = inst.num_drones;
        double floor_ratio = m / (2.0 * (m + delta));
        double slack = 1e-9 * std::max(1.0, oracle.opt_profit);
        if (sol.total_profit + slack < floor_ratio * oracle.opt_profit) {
            ++violations;
        }
        if (m >= delta) {
            ++quarter_cases;
            if (sol.total_profit + slack < oracle.opt_profit / 4.0) {
                ++violations;
            }
        }
        g_suite4.push_back(std::move(inst));
    }
    return {violations == 0 && quarter_cases > 0,
            "300 instances, m in {1,2,3}, " + std::to_string(quarter_cases) +
                " with m >= max degree, " + std::to_string(violations) +
                " floor violations, " + std::to_string(timeouts) +
                " search timeouts"};
}

// criterion 5: every schedule produced anywhere must satisfy the budget,
// compatibility and disjointness invariants. On top of the inline checks the
// earlier suites already ran, sweep greedy over all stored instances.
Outcome criterion5() {
    for (const StoredSdsp& s : g_suite1) {
        dsched::PredecessorTable pt = dsched::build_predecessor_table(s.inst);
        blanket(s.inst, dsched::solve_greedy_mdsp(s.inst, pt).schedule);
    }
    for (const dsched::Instance& inst : g_suite2) {
        dsched::PredecessorTable pt = dsched::build_predecessor_table(inst);
        blanket(inst, dsched::solve_greedy_mdsp(inst, pt).schedule);
    }
    return {g_feasibility_failures == 0 && g_feasibility_checks > 3000,
            std::to_string(g_feasibility_checks) + " schedules checked, " +
                std::to_string(g_feasibility_failures) + " invariant failures"};
}

// criterion 6: moderating a critical slot keeps at least half of the profit
// the slot had before moderation. The suite uses integer profits, so the
// comparison is exact.
Outcome criterion6() {
    int violations = 0;
    for (const dsched::ModerationRecord& r : g_moderations) {
        if (2.0 * r.profit_after < r.profit_before) ++violations;
    }
    return {violations == 0 && !g_moderations.empty(),
            std::to_string(g_moderations.size()) + " moderation events, " +
                std::to_string(violations) + " below half"};
}

// criterion 7: the greedy work counter may grow at most quadratically in n.
// Doubling n at fixed m and max degree 0 must scale the counter by <= 4.5x.
Outcome criterion7() {
    const int sizes[] = {100, 200, 400};
    double counts[3] = {0, 0, 0};
    const int kSeeds = 2;
    bool feasible = true;
    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < kSeeds; ++i) {
            dsched::GenConfig cfg;
            cfg.seed = 7000 + static_cast<std::uint64_t>(10 * c + i);
            cfg.n = sizes[c];
            cfg.num_drones = 4;
            cfg.overlap_density = 0.0;
            cfg.budget_factor = 1000.0;  // nothing is budget-limited
            dsched::Instance inst = dsched::generate(cfg);
            dsched::PredecessorTable pt = dsched::build_predecessor_table(inst);
            dsched::MdspSolution sol = dsched::solve_greedy_mdsp(inst, pt);
            blanket(inst, sol.schedule);
            feasible =
                feasible && dsched::schedule_violations(inst, sol.schedule).empty();
            counts[c] += static_cast<double>(sol.compat_checks) / kSeeds;
        }
    }
    double r1 = counts[1] / counts[0];
    double r2 = counts[2] / counts[1];
    bool ok = feasible && r1 <= 4.5 && r2 <= 4.5;
    std::ostringstream detail;
    detail.precision(3);
    detail << "compat checks " << counts[0] << " / " << counts[1] << " / "
           << counts[2] << ", doubling ratios " << r1 << " and " << r2
           << " (limit 4.5)";
    return {ok, detail.str()};
}

// criterion 8: with one drone the branch-and-bound search and the dp must
// report the same profit on every stored integer instance.
Outcome criterion8() {
    int mismatches = 0;
    for (const StoredSdsp& s : g_suite1) {
        dsched::OracleResult oracle = dsched::solve_exact(s.inst);
        blanket(s.inst, oracle.schedule);
        if (oracle.timed_out || oracle.opt_profit != s.dp_profit) ++mismatches;
    }
    return {mismatches == 0 && !g_suite1.empty(),
            std::to_string(g_suite1.size()) + " instances, " +
                std::to_string(mismatches) + " disagreements at tolerance 0"};
}

// criterion 9: with a fixed seed, every machine-readable command must emit
// byte-identical output across two consecutive runs.
Outcome criterion9() {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "dsched_acceptance";
    fs::create_directories(dir);
    std::string cli = testutil::cli_path();

    std::string single = (dir / "single.ds").string();
    std::string multi = (dir / "multi.ds").string();
    if (testutil::run(cli + " generate --seed 21 --n 12 --integer-profits --out " +
                      single + " 2>/dev/null")
                .exit_code != 0 ||
        testutil::run(cli + " generate --seed 22 --n 12 --drones 3 --out " +
                      multi + " 2>/dev/null")
                .exit_code != 0) {
        return {false, "instance generation failed"};
    }

    std::vector<std::string> commands = {
        cli + " generate --seed 31 --n 15 2>/dev/null",
        cli + " generate --seed 32 --n 10 --mode geometric 2>/dev/null",
        cli + " solve --input " + single + " --algo dp --json 2>/dev/null",
        cli + " solve --input " + single +
            " --algo fptas --epsilon 0.25 --json 2>/dev/null",
        cli + " solve --input " + multi + " --algo greedy --json 2>/dev/null",
        cli + " solve --input " + multi + " --algo exact --json 2>/dev/null",
        cli + " bench --suite sdsp --trials 3 --n 8 --json 2>/dev/null",
        cli + " bench --suite mdsp --trials 3 --n 8 --drones 2 --json 2>/dev/null",
    };
    int unstable = 0;
    int failed = 0;
    for (const std::string& cmd : commands) {
        testutil::RunResult a = testutil::run(cmd);
        testutil::RunResult b = testutil::run(cmd);
        if (a.exit_code != 0 || b.exit_code != 0) ++failed;
        if (a.out != b.out) ++unstable;
    }
    return {unstable == 0 && failed == 0,
            std::to_string(commands.size()) + " commands run twice, " +
                std::to_string(unstable) + " output differences, " +
                std::to_string(failed) + " nonzero exits"};
}

}  // namespace

int main() {
    std::printf("acceptance gate: dsched solver guarantees\n");
    report(1, "dp matches exhaustive search on integer instances", criterion1());
    report(2, "fptas stays within (1 - eps) of the optimum", criterion2());
    report(3, "fptas cell count follows the predicted scaling", criterion3());
    report(4, "greedy meets its per-instance ratio floor", criterion4());
    report(5, "all produced schedules satisfy the feasibility invariants",
           criterion5());
    report(6, "moderation keeps at least half the slot profit", criterion6());
    report(7, "greedy work counter grows at most quadratically", criterion7());
    report(8, "branch-and-bound agrees with the dp for one drone", criterion8());
    report(9, "seeded cli output is byte-identical across runs", criterion9());

    if (g_failed == 0) {
        std::printf("all 9 criteria passed\n");
        return 0;
    }
    std::printf("%d of 9 criteria FAILED\n", g_failed);
    return 1;
}
