// antcover: test-sequence generation for state-transition models.
//
// Subcommands:
//   run      generate a sequence with one algorithm and report coverage
//   oracle   exhaustive minimum covering walks for small machines
//   compare  run aco/ga/random over many seeds and emit a CSV summary

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "antcover/aco.hpp"
#include "antcover/baselines.hpp"
#include "antcover/coverage.hpp"
#include "antcover/fixtures.hpp"
#include "antcover/machine.hpp"
#include "antcover/machine_io.hpp"
#include "antcover/oracle.hpp"
#include "antcover/render.hpp"
#include "antcover/version.hpp"

#ifdef _WIN32
#include <io.h>
#define ANTCOVER_ISATTY _isatty(1)
#else
#include <unistd.h>
#define ANTCOVER_ISATTY isatty(1)
#endif

namespace {

using namespace antcover;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// a machine reference is a document path or a registered fixture name
StateMachine load_machine(const std::string& ref) {
    std::ifstream probe(ref);
    if (!probe) {
        const auto names = fixture_names();
        if (std::find(names.begin(), names.end(), ref) != names.end())
            return fixture_by_name(ref);
    }
    try {
        return parse_machine(read_file(ref));
    } catch (const InputError& e) {
        throw InputError(ref + ": " + e.what());
    }
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + out_path + "'");
    out << content;
    if (!out) throw InputError("cannot write '" + out_path + "'");
}

bool color_enabled() {
    return ANTCOVER_ISATTY && std::getenv("ANTCOVER_NO_COLOR") == nullptr;
}

struct RunOptions {
    std::string machine_path;
    std::string algo = "aco";
    std::string emit = "text";
    std::string out_path;
    bool verbose = false;
    bool seed_given = false;
    AcoParams aco;
    GaParams ga;
    std::size_t oracle_bound = 0;
};

nlohmann::json aco_params_json(const AcoParams& p, std::uint64_t max_steps) {
    return {{"alpha", p.alpha},
            {"beta", p.beta},
            {"initial_tau", p.initial_tau},
            {"initial_eta", p.initial_eta},
            {"seed", p.seed},
            {"max_steps", max_steps},
            {"tie_epsilon", p.tie_epsilon}};
}

nlohmann::json ga_params_json(const GaParams& p, std::size_t length) {
    return {{"population_size", p.population_size},
            {"chromosome_length", length},
            {"generations", p.generations},
            {"crossover_rate", p.crossover_rate},
            {"mutation_rate", p.mutation_rate},
            {"seed", p.seed}};
}

std::uint64_t default_budget(const StateMachine& m) {
    return 64ull * m.transition_count() *
           static_cast<std::uint64_t>(cyclomatic_complexity(m));
}

int run_command(const RunOptions& opt) {
    StateMachine m = load_machine(opt.machine_path);

    if (opt.algo == "oracle") {
        CoveringSolution solution = minimal_cover(m, opt.oracle_bound);
        if (opt.emit == "json-doc")
            write_output(opt.out_path, covering_to_json(solution).dump(2) + "\n");
        else if (opt.emit == "text")
            write_output(opt.out_path, render_covering_text(solution));
        else
            throw InputError("--emit " + opt.emit +
                             " is not supported for the oracle (use text or "
                             "json-doc)");
        return 0;
    }

    if (!opt.seed_given) {
        if (opt.emit == "json-doc" || opt.emit == "csv")
            throw InputError(
                "machine-readable output requires an explicit --seed");
        std::fprintf(stderr,
                     "notice: no --seed given; using seed 0 (pass --seed for "
                     "explicit reproducibility)\n");
    }

    TraceFn trace;
    if (opt.verbose) {
        trace = [&m](const TraceStep& step) {
            std::string line = "[seg " + std::to_string(step.segment + 1) +
                               "] at " + step.state + " ";
            for (std::size_t i = 0; i < step.feasible.size(); ++i) {
                char p[32];
                std::snprintf(p, sizeof(p), "%.4f", step.probabilities[i]);
                line += step.feasible[i] + ":" + p + " ";
            }
            line += "-> " + step.chosen;
            std::fprintf(stderr, "%s\n", line.c_str());
        };
    }

    TestSequence seq;
    CoverageReport report;
    RunMeta meta;
    meta.machine_ref = opt.machine_path;
    meta.algorithm = opt.algo;

    if (opt.algo == "aco") {
        AcoParams p = opt.aco;
        RunResult result = run_ant(m, p, trace);
        seq = std::move(result.sequence);
        report = std::move(result.report);
        meta.params = aco_params_json(
            p, p.max_steps != 0 ? p.max_steps : default_budget(m));
    } else if (opt.algo == "random") {
        std::uint64_t budget =
            opt.aco.max_steps != 0 ? opt.aco.max_steps : default_budget(m);
        WalkResult result = random_walk(m, opt.aco.seed, budget);
        seq = std::move(result.sequence);
        report = std::move(result.report);
        meta.params = {{"seed", opt.aco.seed}, {"max_steps", budget}};
    } else if (opt.algo == "ga") {
        GaParams p = opt.ga;
        p.seed = opt.aco.seed;
        GaResult result = ga_generate(m, p);
        seq = std::move(result.sequence);
        report = std::move(result.report);
        meta.params = ga_params_json(
            p, p.chromosome_length != 0 ? p.chromosome_length
                                        : 2 * m.transition_count());
    } else {
        throw InputError("unknown --algo '" + opt.algo +
                         "' (expected aco, random, ga or oracle)");
    }

    if (opt.emit == "text") {
        bool color = opt.out_path.empty() && color_enabled();
        write_output(opt.out_path, render_run_text(m, meta, seq, report, color));
    } else if (opt.emit == "json-doc") {
        write_output(opt.out_path,
                     run_to_json(m, meta, seq, report).dump(2) + "\n");
    } else if (opt.emit == "csv") {
        write_output(opt.out_path,
                     render_comparison_csv(compare({{meta.algorithm, report}})));
    } else if (opt.emit == "dot") {
        write_output(opt.out_path, to_dot_annotated(m, report));
    } else {
        throw InputError("unknown --emit '" + opt.emit +
                         "' (expected text, json-doc, csv or dot)");
    }

    // Step-guard abort with incomplete coverage is a runtime failure.
    bool guard = false;
    for (const auto& segment : seq.segments)
        if (segment.terminal == SegmentEnd::StepGuard) guard = true;
    if (guard && report.covered_transitions < report.total_transitions)
        return 2;
    return 0;
}

int compare_command(const std::vector<std::string>& machine_paths,
                    std::size_t seeds, const std::string& out_path) {
    if (machine_paths.empty())
        throw InputError("compare needs at least one machine file");
    if (seeds < 1) throw InputError("--seeds must be at least 1");

    // Fail fast: validate every machine before any run.
    std::vector<StateMachine> machines;
    machines.reserve(machine_paths.size());
    for (const auto& path : machine_paths) machines.push_back(load_machine(path));

    struct Cell {
        double coverage_sum = 0;
        double steps_sum = 0;
    };
    std::map<std::pair<std::string, std::string>, Cell> cells;
    const std::vector<std::string> algos{"aco", "ga", "random"};

    for (std::size_t i = 0; i < machines.size(); ++i) {
        const StateMachine& m = machines[i];
        std::uint64_t budget = default_budget(m);
        for (std::uint64_t seed = 0; seed < seeds; ++seed) {
            AcoParams aco;
            aco.seed = seed;
            RunResult a = run_ant(m, aco);
            GaParams ga;
            ga.seed = seed;
            GaResult g = ga_generate(m, ga);
            WalkResult r = random_walk(m, seed, budget);
            auto add = [&](const std::string& algo, const CoverageReport& rep) {
                Cell& cell = cells[{machine_paths[i], algo}];
                cell.coverage_sum += rep.coverage_pct;
                cell.steps_sum += static_cast<double>(rep.total_steps);
            };
            add("aco", a.report);
            add("ga", g.report);
            add("random", r.report);
        }
    }

    std::string csv =
        "machine,algorithm,seeds,mean_coverage_pct,mean_total_steps\n";
    for (const auto& [key, cell] : cells) {
        char steps[32];
        std::snprintf(steps, sizeof(steps), "%.2f",
                      cell.steps_sum / static_cast<double>(seeds));
        csv += key.first + "," + key.second + "," + std::to_string(seeds) +
               "," +
               format_pct(cell.coverage_sum / static_cast<double>(seeds)) +
               "," + steps + "\n";
    }
    write_output(out_path, csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"antcover: ant-colony test-sequence generation over "
                 "state-transition models"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("antcover ") + kVersion);

    RunOptions opt;
    auto* run = app.add_subcommand("run", "generate a test sequence");
    run->add_option("machine", opt.machine_path, "machine document (JSON)")
        ->required();
    run->add_option("--algo", opt.algo, "aco | random | ga | oracle")
        ->capture_default_str();
    auto* seed_opt =
        run->add_option("--seed", opt.aco.seed, "random seed (64-bit)");
    run->add_option("--alpha", opt.aco.alpha, "pheromone exponent")
        ->capture_default_str();
    run->add_option("--beta", opt.aco.beta, "heuristic exponent")
        ->capture_default_str();
    run->add_option("--initial-tau", opt.aco.initial_tau,
                    "initial pheromone value")
        ->capture_default_str();
    run->add_option("--initial-eta", opt.aco.initial_eta,
                    "initial heuristic value")
        ->capture_default_str();
    run->add_option("--tie-epsilon", opt.aco.tie_epsilon,
                    "relative tolerance for probability ties")
        ->capture_default_str();
    run->add_option("--max-steps", opt.aco.max_steps,
                    "traversal budget (0 = 64 * E * cyclomatic complexity)");
    run->add_option("--population", opt.ga.population_size, "GA population")
        ->capture_default_str();
    run->add_option("--generations", opt.ga.generations, "GA generations")
        ->capture_default_str();
    run->add_option("--chromosome-length", opt.ga.chromosome_length,
                    "GA chromosome length (0 = 2 * E)");
    run->add_option("--crossover-rate", opt.ga.crossover_rate,
                    "GA crossover rate")
        ->capture_default_str();
    run->add_option("--mutation-rate", opt.ga.mutation_rate, "GA mutation rate")
        ->capture_default_str();
    run->add_option("--bound", opt.oracle_bound,
                    "oracle total-length bound (0 = 4 * E)");
    run->add_option("--emit", opt.emit, "text | json-doc | csv | dot")
        ->capture_default_str();
    run->add_option("--out", opt.out_path, "write output to a file");
    run->add_flag("--verbose", opt.verbose, "per-step trace on stderr");

    std::string oracle_machine;
    std::size_t oracle_bound = 0;
    std::string oracle_emit = "text";
    std::string oracle_out;
    auto* oracle =
        app.add_subcommand("oracle", "exhaustive minimum covering walks");
    oracle->add_option("machine", oracle_machine, "machine document (JSON)")
        ->required();
    oracle->add_option("--bound", oracle_bound,
                       "total-length bound (0 = 4 * E)");
    oracle->add_option("--emit", oracle_emit, "text | json-doc")
        ->capture_default_str();
    oracle->add_option("--out", oracle_out, "write output to a file");

    std::vector<std::string> compare_machines;
    std::size_t compare_seeds = 30;
    std::string compare_out;
    auto* cmp = app.add_subcommand(
        "compare", "aco vs ga vs random over many seeds (CSV)");
    cmp->add_option("machines", compare_machines, "machine documents")
        ->required();
    cmp->add_option("--seeds", compare_seeds, "number of seeds per cell")
        ->capture_default_str();
    cmp->add_option("--out", compare_out, "write CSV to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // help/version exit 0, usage errors exit 1
    }

    try {
        if (run->parsed()) {
            opt.seed_given = seed_opt->count() > 0;
            return run_command(opt);
        }
        if (oracle->parsed()) {
            RunOptions o;
            o.machine_path = oracle_machine;
            o.algo = "oracle";
            o.oracle_bound = oracle_bound;
            o.emit = oracle_emit;
            o.out_path = oracle_out;
            return run_command(o);
        }
        if (cmp->parsed())
            return compare_command(compare_machines, compare_seeds, compare_out);
    } catch (const antcover::InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
