// Command-line frontend: solve an instance file, generate instances, or run
// the ratio benchmark harness. Machine-readable output goes to stdout as JSON
// and is byte-deterministic for a fixed input; progress and warnings go to
// stderr.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dsched/generator.hpp"
#include "dsched/io.hpp"
#include "dsched/mdsp.hpp"
#include "dsched/model.hpp"
#include "dsched/oracle.hpp"
#include "dsched/sdsp.hpp"

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTimeout = 3;
constexpr int kExitRatio = 4;
constexpr int kExitInternal = 70;

void usage_error(const std::string& message) {
    throw std::invalid_argument(message);
}

std::string resolve_input(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path) || fs::path(path).is_absolute()) return path;
    if (const char* base = std::getenv("DSCHED_DATA_DIR")) {
        fs::path joined = fs::path(base) / path;
        if (fs::exists(joined)) return joined.string();
    }
    return path;
}

// Reads, parses and validates an instance file. Returns kExitOk and fills
// `out` on success; otherwise prints the problems and returns kExitValidation.
int load_instance(const std::string& path, bool strict, int drones_override,
                  dsched::Instance& out) {
    dsched::ParseResult parsed =
        dsched::parse_instance_file(resolve_input(path), strict);
    for (const std::string& w : parsed.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    if (!parsed.ok()) {
        for (const std::string& e : parsed.errors) {
            std::cerr << "error: " << e << "\n";
        }
        return kExitValidation;
    }
    if (drones_override > 0) parsed.instance.num_drones = drones_override;

    dsched::ValidationResult vr = dsched::validate_instance(parsed.instance);
    for (const dsched::ValidationIssue& w : vr.warnings) {
        std::cerr << "warning: " << w.message << "\n";
    }
    if (!vr.ok()) {
        for (const dsched::ValidationIssue& e : vr.errors) {
            std::cerr << "error: " << e.message << "\n";
        }
        return kExitValidation;
    }
    out = std::move(vr.instance);
    return kExitOk;
}

ojson schedule_json(const dsched::Schedule& schedule) {
    ojson drones = ojson::array();
    for (const dsched::Assignment& a : schedule.assignments) {
        ojson entry;
        entry["deliveries"] = a.delivery_ids;
        entry["cost"] = a.total_cost;
        entry["profit"] = a.total_profit;
        drones.push_back(entry);
    }
    return drones;
}

void print_schedule_table(const dsched::Instance& inst,
                          const dsched::Schedule& schedule) {
    for (std::size_t i = 0; i < schedule.assignments.size(); ++i) {
        const dsched::Assignment& a = schedule.assignments[i];
        std::cout << "drone " << (i + 1) << ": deliveries [";
        for (std::size_t k = 0; k < a.delivery_ids.size(); ++k) {
            std::cout << (k ? " " : "") << a.delivery_ids[k];
        }
        std::cout << "] cost " << dsched::format_double(a.total_cost)
                  << " profit " << dsched::format_double(a.total_profit) << "\n";
    }
    (void)inst;
}

struct SolveOptions {
    std::string input;
    std::string algo = "dp";
    double epsilon = 0.0;
    bool epsilon_given = false;
    int drones = 0;  // 0 keeps the instance value
    std::string slot_strategy = "best-fit";
    std::uint64_t node_limit = dsched::OracleOptions{}.node_limit;
    bool node_limit_given = false;
    bool strategy_given = false;
    bool json = false;
    bool strict = false;
    bool with_oracle = false;
};

int run_solve(const SolveOptions& opt) {
    if (opt.epsilon_given && opt.algo != "fptas") {
        usage_error("--epsilon only applies to --algo fptas");
    }
    if (!opt.epsilon_given && opt.algo == "fptas") {
        usage_error("--algo fptas requires --epsilon");
    }
    if (opt.node_limit_given && opt.algo != "exact") {
        usage_error("--node-limit only applies to --algo exact");
    }
    if (opt.strategy_given && opt.algo != "greedy") {
        usage_error("--slot-strategy only applies to --algo greedy");
    }

    dsched::Instance inst;
    int rc = load_instance(opt.input, opt.strict, opt.drones, inst);
    if (rc != kExitOk) return rc;

    dsched::PredecessorTable pt = dsched::build_predecessor_table(inst);

    dsched::Schedule schedule;
    ojson parameters = ojson::object();
    ojson counters = ojson::object();
    bool optimal = false;
    std::optional<double> ratio_bound;
    std::optional<bool> timed_out;

    auto t0 = std::chrono::steady_clock::now();
    if (opt.algo == "dp" || opt.algo == "fptas") {
        if (inst.num_drones != 1) {
            usage_error("--algo " + opt.algo +
                        " solves the single-drone problem; this instance has " +
                        std::to_string(inst.num_drones) +
                        " drones (override with --drones 1)");
        }
        dsched::SdspSolution sol =
            opt.algo == "dp" ? dsched::solve_dp_exact(inst, pt)
                             : dsched::solve_fptas(inst, pt, opt.epsilon);
        schedule.assignments.push_back(sol.assignment);
        schedule.total_profit = sol.assignment.total_profit;
        optimal = sol.optimal_flag;
        if (opt.algo == "fptas") parameters["epsilon"] = sol.epsilon;
        counters["dp_cells"] = sol.dp_cells;
    } else if (opt.algo == "greedy") {
        dsched::SlotStrategy strategy = opt.slot_strategy == "first-index"
                                            ? dsched::SlotStrategy::kFirstIndex
                                            : dsched::SlotStrategy::kBestFit;
        dsched::MdspSolution sol = dsched::solve_greedy_mdsp(inst, pt, strategy);
        schedule = sol.schedule;
        parameters["slot_strategy"] = opt.slot_strategy;
        counters["compat_checks"] = sol.compat_checks;
        ratio_bound = sol.ratio_bound;
    } else if (opt.algo == "exact") {
        dsched::OracleOptions oracle_opts;
        oracle_opts.node_limit = opt.node_limit;
        dsched::OracleResult res = dsched::solve_exact(inst, oracle_opts);
        if (res.timed_out && opt.strict) {
            std::cerr << "error: search stopped at the node limit ("
                      << res.nodes_explored << " nodes)\n";
            return kExitTimeout;
        }
        schedule = res.schedule;
        optimal = !res.timed_out;
        timed_out = res.timed_out;
        parameters["node_limit"] = opt.node_limit;
        counters["nodes_explored"] = res.nodes_explored;
    } else {
        usage_error("unknown algorithm '" + opt.algo + "'");
    }
    auto t1 = std::chrono::steady_clock::now();
    double elapsed_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();

    std::vector<std::string> violations =
        dsched::schedule_violations(inst, schedule);
    if (!violations.empty()) {
        throw std::logic_error("solver produced an invalid schedule: " +
                               violations.front());
    }

    std::optional<dsched::OracleResult> oracle;
    if (opt.with_oracle) {
        oracle = dsched::solve_exact(inst);
        if (oracle->timed_out && opt.strict) {
            std::cerr << "error: oracle stopped at the node limit ("
                      << oracle->nodes_explored << " nodes)\n";
            return kExitTimeout;
        }
    }

    if (opt.json) {
        ojson report;
        report["instance"] = {{"deliveries", inst.size()},
                              {"budget", inst.budget},
                              {"num_drones", inst.num_drones},
                              {"max_degree", pt.max_degree}};
        report["algorithm"] = opt.algo;
        report["parameters"] = parameters;
        report["total_profit"] = schedule.total_profit;
        report["optimal"] = optimal;
        if (ratio_bound) report["ratio_bound"] = *ratio_bound;
        if (timed_out) report["timed_out"] = *timed_out;
        report["drones"] = schedule_json(schedule);
        report["counters"] = counters;
        if (oracle) {
            if (oracle->timed_out) {
                report["oracle"] = {{"timed_out", true}};
            } else {
                report["oracle"] = {
                    {"opt_profit", oracle->opt_profit},
                    {"gap", oracle->opt_profit - schedule.total_profit}};
            }
        }
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << "instance: " << inst.size() << " deliveries, budget "
                  << dsched::format_double(inst.budget) << ", "
                  << inst.num_drones << " drone(s), max degree "
                  << pt.max_degree << "\n";
        std::cout << "algorithm: " << opt.algo;
        if (opt.algo == "fptas") {
            std::cout << " (epsilon " << dsched::format_double(opt.epsilon) << ")";
        }
        if (opt.algo == "greedy") std::cout << " (" << opt.slot_strategy << ")";
        std::cout << "\n";
        std::cout << "total profit: "
                  << dsched::format_double(schedule.total_profit)
                  << (optimal ? " (optimal)" : "") << "\n";
        if (ratio_bound) {
            std::cout << "guaranteed ratio: " << dsched::format_double(*ratio_bound)
                      << " of optimal\n";
        }
        if (timed_out && *timed_out) {
            std::cout << "note: node limit reached, profit is a lower bound\n";
        }
        print_schedule_table(inst, schedule);
        if (oracle) {
            if (oracle->timed_out) {
                std::cout << "oracle: node limit reached\n";
            } else {
                std::cout << "oracle optimum: "
                          << dsched::format_double(oracle->opt_profit) << " (gap "
                          << dsched::format_double(oracle->opt_profit -
                                                   schedule.total_profit)
                          << ")\n";
            }
        }
        // Informational only; never part of the JSON report.
        std::cout << "elapsed: " << elapsed_ms << " ms\n";
    }
    return kExitOk;
}

struct GenerateOptions {
    dsched::GenConfig config;
    std::string mode = "random";
    std::string profit_mode = "uniform";
    std::vector<double> profit_range;
    std::vector<double> cost_range;
    std::string out;
};

int run_generate(GenerateOptions& opt) {
    if (opt.mode == "random") {
        opt.config.mode = dsched::GenMode::kRandom;
    } else if (opt.mode == "geometric") {
        opt.config.mode = dsched::GenMode::kGeometric;
    } else {
        usage_error("unknown mode '" + opt.mode + "'");
    }
    if (opt.profit_mode == "uniform") {
        opt.config.profit_mode = dsched::ProfitMode::kUniform;
    } else if (opt.profit_mode == "distance") {
        opt.config.profit_mode = dsched::ProfitMode::kDistanceCorrelated;
    } else {
        usage_error("unknown profit mode '" + opt.profit_mode + "'");
    }
    if (!opt.profit_range.empty()) {
        opt.config.profit_lo = opt.profit_range[0];
        opt.config.profit_hi = opt.profit_range[1];
    }
    if (!opt.cost_range.empty()) {
        opt.config.cost_lo = opt.cost_range[0];
        opt.config.cost_hi = opt.cost_range[1];
    }

    dsched::Instance inst = dsched::generate(opt.config);
    dsched::PredecessorTable pt = dsched::build_predecessor_table(inst);
    std::cerr << "generated " << inst.size() << " deliveries, budget "
              << dsched::format_double(inst.budget) << ", max degree "
              << pt.max_degree << "\n";

    std::string text = dsched::serialize_instance(inst);
    if (opt.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(opt.out, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write '" << opt.out << "'\n";
            return kExitValidation;
        }
        f << text;
    }
    return kExitOk;
}

struct BenchOptions {
    std::string suite;
    int trials = 20;
    int n = 12;
    std::vector<double> epsilons;
    std::uint64_t seed = 1;
    int drones = 2;
    bool drones_given = false;
    bool epsilon_given = false;
    bool json = false;
    bool strict = false;
};

// Exercises an approximation algorithm against the exact search on a stream
// of seeded instances and checks every result against its guaranteed floor.
int run_bench(const BenchOptions& opt) {
    if (opt.suite != "sdsp" && opt.suite != "mdsp") {
        usage_error("unknown suite '" + opt.suite + "'");
    }
    if (opt.trials <= 0) usage_error("--trials must be positive");
    if (opt.n < 1 || opt.n > 20) {
        usage_error("--n must lie in [1, 20] so the exact search stays cheap");
    }
    if (opt.suite == "sdsp" && opt.drones_given) {
        usage_error("--drones only applies to the mdsp suite");
    }
    if (opt.suite == "mdsp" && opt.epsilon_given) {
        usage_error("--epsilon only applies to the sdsp suite");
    }
    std::vector<double> epsilons =
        opt.epsilons.empty() ? std::vector<double>{0.25} : opt.epsilons;
    for (double e : epsilons) {
        if (!(e > 0.0 && e < 1.0)) usage_error("epsilon must lie in (0, 1)");
    }

    const double budget_factors[] = {0.3, 0.5, 0.8};
    ojson results = ojson::array();
    int violations = 0;

    for (int t = 0; t < opt.trials; ++t) {
        dsched::GenConfig cfg;
        cfg.seed = opt.seed + static_cast<std::uint64_t>(t);
        cfg.n = opt.n;
        cfg.mode = dsched::GenMode::kRandom;
        cfg.num_drones = opt.suite == "mdsp" ? opt.drones : 1;
        cfg.profit_lo = 0.5;
        cfg.profit_hi = 30.0;
        cfg.cost_lo = 1.0;
        cfg.cost_hi = 10.0;
        cfg.budget_factor = budget_factors[t % 3];
        cfg.overlap_density = (t % 5) / 4.0;

        dsched::Instance inst = dsched::generate(cfg);
        dsched::PredecessorTable pt = dsched::build_predecessor_table(inst);
        dsched::OracleResult oracle = dsched::solve_exact(inst);
        if (oracle.timed_out) {
            if (opt.strict) {
                std::cerr << "error: exact search hit its node limit on trial "
                          << t << "\n";
                return kExitTimeout;
            }
            ojson row;
            row["trial"] = t;
            row["seed"] = cfg.seed;
            row["timed_out"] = true;
            results.push_back(row);
            continue;
        }
        double opt_profit = oracle.opt_profit;

        auto check = [&](const dsched::Schedule& schedule, double achieved,
                         double floor, ojson row) {
            std::vector<std::string> bad =
                dsched::schedule_violations(inst, schedule);
            if (!bad.empty()) {
                throw std::logic_error("benchmark produced an invalid schedule: " +
                                       bad.front());
            }
            double slack = 1e-9 * std::max(1.0, opt_profit);
            bool ok = achieved + slack >= floor * opt_profit;
            row["opt"] = opt_profit;
            row["achieved"] = achieved;
            row["ratio"] = opt_profit > 0.0 ? achieved / opt_profit : 1.0;
            row["floor"] = floor;
            row["ok"] = ok;
            if (!ok) ++violations;
            results.push_back(row);
        };

        if (opt.suite == "sdsp") {
            for (double e : epsilons) {
                dsched::SdspSolution sol = dsched::solve_fptas(inst, pt, e);
                dsched::Schedule schedule;
                schedule.assignments.push_back(sol.assignment);
                schedule.total_profit = sol.assignment.total_profit;
                ojson row;
                row["trial"] = t;
                row["seed"] = cfg.seed;
                row["epsilon"] = e;
                check(schedule, schedule.total_profit, 1.0 - e, row);
            }
        } else {
            dsched::MdspSolution sol = dsched::solve_greedy_mdsp(inst, pt);
            ojson row;
            row["trial"] = t;
            row["seed"] = cfg.seed;
            row["drones"] = inst.num_drones;
            row["max_degree"] = pt.max_degree;
            check(sol.schedule, sol.total_profit, sol.ratio_bound, row);
        }
    }

    if (opt.json) {
        ojson report;
        report["suite"] = opt.suite;
        report["trials"] = opt.trials;
        report["n"] = opt.n;
        report["seed"] = opt.seed;
        if (opt.suite == "sdsp") report["epsilons"] = epsilons;
        if (opt.suite == "mdsp") report["drones"] = opt.drones;
        report["results"] = results;
        report["ratio_violations"] = violations;
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << "suite " << opt.suite << ", " << opt.trials
                  << " trials, n=" << opt.n << "\n";
        for (const ojson& row : results) {
            std::cout << "trial " << row["trial"].get<int>();
            if (row.contains("timed_out")) {
                std::cout << ": exact search timed out, skipped\n";
                continue;
            }
            if (row.contains("epsilon")) {
                std::cout << " eps=" << row["epsilon"].get<double>();
            }
            std::cout << " opt=" << row["opt"].get<double>()
                      << " achieved=" << row["achieved"].get<double>()
                      << " ratio=" << row["ratio"].get<double>()
                      << " floor=" << row["floor"].get<double>()
                      << (row["ok"].get<bool>() ? "" : "  RATIO VIOLATION")
                      << "\n";
        }
        std::cout << (violations == 0 ? "all ratios within guarantees"
                                      : "RATIO VIOLATIONS FOUND")
                  << "\n";
    }
    return violations == 0 ? kExitOk : kExitRatio;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"drone delivery scheduling toolkit"};
    app.require_subcommand(1);

    SolveOptions solve;
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve an instance file");
    solve_cmd->add_option("--input", solve.input, "instance file path")
        ->required();
    solve_cmd
        ->add_option("--algo", solve.algo,
                     "algorithm: dp, fptas, greedy, or exact")
        ->check(CLI::IsMember({"dp", "fptas", "greedy", "exact"}));
    CLI::Option* eps_opt = solve_cmd->add_option(
        "--epsilon", solve.epsilon, "approximation parameter for fptas");
    solve_cmd->add_option("--drones", solve.drones,
                          "override the instance's drone count")
        ->check(CLI::PositiveNumber);
    CLI::Option* strat_opt =
        solve_cmd
            ->add_option("--slot-strategy", solve.slot_strategy,
                         "greedy slot choice: best-fit or first-index")
            ->check(CLI::IsMember({"best-fit", "first-index"}));
    CLI::Option* limit_opt = solve_cmd->add_option(
        "--node-limit", solve.node_limit, "search node budget for exact");
    CLI::Option* solve_json =
        solve_cmd->add_flag("--json", solve.json, "machine-readable output");
    CLI::Option* solve_table =
        solve_cmd->add_flag("--table", "human-readable output (default)");
    solve_json->excludes(solve_table);
    solve_cmd->add_flag("--strict", solve.strict,
                        "treat unknown keys and search timeouts as fatal");
    solve_cmd->add_flag("--with-oracle", solve.with_oracle,
                        "also report the exact optimum and the gap");

    GenerateOptions gen;
    CLI::App* gen_cmd = app.add_subcommand("generate", "generate an instance");
    gen_cmd->add_option("--seed", gen.config.seed, "RNG seed");
    gen_cmd->add_option("--n", gen.config.n, "number of deliveries")
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--mode", gen.mode, "random or geometric")
        ->check(CLI::IsMember({"random", "geometric"}));
    gen_cmd->add_option("--drones", gen.config.num_drones, "drone count")
        ->check(CLI::PositiveNumber);
    gen_cmd
        ->add_option("--profit-range", gen.profit_range, "profit bounds: lo hi")
        ->expected(2);
    gen_cmd->add_option("--cost-range", gen.cost_range, "cost bounds: lo hi")
        ->expected(2);
    gen_cmd->add_flag("--integer-profits", gen.config.integer_profits,
                      "draw integer profits");
    gen_cmd->add_flag("--integer-costs", gen.config.integer_costs,
                      "draw integer costs");
    gen_cmd->add_option("--budget-factor", gen.config.budget_factor,
                        "budget as a multiple of the expected per-drone load");
    gen_cmd->add_option("--overlap-density", gen.config.overlap_density,
                        "random mode interval overlap in [0, 1]");
    gen_cmd->add_option("--waypoints", gen.config.waypoint_count,
                        "geometric mode: truck route waypoint count");
    gen_cmd->add_option("--truck-speed", gen.config.truck_speed,
                        "geometric mode: truck speed");
    gen_cmd->add_option("--drone-speed", gen.config.drone_speed,
                        "geometric mode: drone speed");
    gen_cmd->add_option("--energy-rate", gen.config.energy_rate,
                        "geometric mode: battery cost per unit flight distance");
    gen_cmd
        ->add_option("--profit-mode", gen.profit_mode, "uniform or distance")
        ->check(CLI::IsMember({"uniform", "distance"}));
    gen_cmd->add_option("--out", gen.out, "output file (default: stdout)");

    BenchOptions bench;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "check approximation ratios on seeded streams");
    bench_cmd->add_option("--suite", bench.suite, "sdsp or mdsp")->required();
    bench_cmd->add_option("--trials", bench.trials, "number of instances");
    bench_cmd->add_option("--n", bench.n, "deliveries per instance (max 20)");
    CLI::Option* bench_eps =
        bench_cmd
            ->add_option("--epsilon", bench.epsilons,
                         "fptas epsilons to test (sdsp suite)")
            ->delimiter(',');
    bench_cmd->add_option("--seed", bench.seed, "base RNG seed");
    CLI::Option* bench_drones = bench_cmd->add_option(
        "--drones", bench.drones, "drone count (mdsp suite)");
    CLI::Option* bench_json =
        bench_cmd->add_flag("--json", bench.json, "machine-readable output");
    CLI::Option* bench_table =
        bench_cmd->add_flag("--table", "human-readable output (default)");
    bench_json->excludes(bench_table);
    bench_cmd->add_flag("--strict", bench.strict,
                        "treat exact-search timeouts as fatal");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    solve.epsilon_given = eps_opt->count() > 0;
    solve.node_limit_given = limit_opt->count() > 0;
    solve.strategy_given = strat_opt->count() > 0;
    bench.drones_given = bench_drones->count() > 0;
    bench.epsilon_given = bench_eps->count() > 0;

    try {
        if (solve_cmd->parsed()) return run_solve(solve);
        if (gen_cmd->parsed()) return run_generate(gen);
        if (bench_cmd->parsed()) return run_bench(bench);
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
