// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors
//
// plan: benchmark runner and experience-graph export.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ltr/bench.hpp"
#include "ltr/errors.hpp"
#include "ltr/task_sequence.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kScenarioError = 2;

std::vector<ltr::PlannerKind> parse_planners(const std::vector<std::string>& names) {
    std::vector<ltr::PlannerKind> out;
    for (const auto& n : names) {
        const auto k = ltr::parse_planner(n);
        if (!k) {
            throw ltr::ContractViolation("unknown planner '" + n + "' (expected ltr, lazyprm or birrt)");
        }
        out.push_back(*k);
    }
    return out;
}

int cmd_run(const ltr::BenchConfig& cfg, bool serial) {
    cfg.validate();
    if (cfg.out_path.empty()) {
        throw ltr::ContractViolation("--out is required");
    }
    std::vector<ltr::NamedScenario> scenarios;
    try {
        scenarios = ltr::load_scenarios(cfg.scenario_paths);
    } catch (const std::exception& e) {
        std::cerr << "scenario error: " << e.what() << '\n';
        return kScenarioError;
    }

    // Completed jobs go to <out>.partial as they finish; the sorted artifact
    // replaces it at the end.
    const std::string partial = cfg.out_path + ".partial";
    std::ofstream part(partial);
    if (!part) {
        throw ltr::ContractViolation("cannot write " + partial);
    }
    part << ltr::csv_header() << '\n' << std::flush;
    const ltr::JobSink sink = [&part](const std::vector<ltr::TaskRecord>& rows) {
        for (const auto& r : rows) {
            part << ltr::csv_row(r) << '\n';
        }
        part.flush();
    };
    const auto rows = serial ? ltr::run_benchmark_serial(cfg, scenarios, sink)
                              : ltr::run_benchmark(cfg, scenarios, sink);
    part.close();

    std::ofstream out(cfg.out_path);
    if (!out) {
        throw ltr::ContractViolation("cannot write " + cfg.out_path);
    }
    ltr::write_csv(out, rows);
    out.close();
    std::filesystem::remove(partial);
    std::cerr << rows.size() << " rows written to " << cfg.out_path << '\n';
    return 0;
}

int cmd_summarize(const std::string& in_path, bool all_tasks) {
    std::ifstream in(in_path);
    if (!in) {
        throw ltr::ContractViolation("cannot read " + in_path);
    }
    const auto rows = ltr::read_csv(in);
    const std::set<std::size_t> tasks = all_tasks ? std::set<std::size_t>{} : std::set<std::size_t>{1, 8};
    ltr::write_summary(std::cout, ltr::summarize(rows, tasks));
    return 0;
}

int cmd_export_graph(const std::string& scenario_path, std::optional<std::uint64_t> seed,
                     std::optional<std::size_t> max_iters,
                     const std::string& out_path) {
    std::optional<ltr::Scenario> scenario;
    try {
        scenario = ltr::load_scenario_file(scenario_path);
    } catch (const std::exception& e) {
        std::cerr << "scenario error: " << e.what() << '\n';
        return kScenarioError;
    }
    ltr::SequenceOptions opts;
    opts.max_iters = max_iters;
    ltr::SequenceTrace trace;
    const auto rows =
        ltr::run_task_sequence(*scenario, ltr::PlannerKind::ltr, seed.value_or(scenario->params.seed), opts,
                               std::filesystem::path(scenario_path).stem().string(), &trace);
    std::ofstream out(out_path);
    if (!out) {
        throw ltr::ContractViolation("cannot write " + out_path);
    }
    trace.final_graph->export_text(out);
    std::size_t ok = 0;
    for (const auto& r : rows) {
        ok += r.success ? 1 : 0;
    }
    std::cerr << ok << '/' << rows.size() << " plans succeeded; graph has " << trace.final_graph->vertex_count()
              << " vertices\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lazy-learning tree planner benchmarks"};
    app.require_subcommand(1);

    ltr::BenchConfig cfg;
    std::vector<std::string> planner_names;
    std::size_t budget_iters = 0;
    bool serial = false;
    auto* run = app.add_subcommand("run", "Run a scenario x planner x repeat grid and write CSV");
    run->add_option("--scenario", cfg.scenario_paths, "Scenario JSON file(s)")->required();
    run->add_option("--planner", planner_names, "ltr, lazyprm or birrt (repeatable)")->required()->delimiter(',');
    run->add_option("--repeats", cfg.repeats, "Repeats per planner")->default_val(1);
    run->add_option("--seed", cfg.seed_base, "Seed of the first repeat")->default_val(0);
    run->add_option("--budget-iters", budget_iters, "Iteration cap per plan (overrides the scenario)");
    run->add_flag("--first-solution-only", cfg.first_solution_only, "Return on the first solution");
    run->add_flag("--serial", serial, "Run jobs on the calling thread");
    run->add_option("--out", cfg.out_path, "Output CSV")->required();

    std::string in_path;
    bool all_tasks = false;
    auto* summarize = app.add_subcommand("summarize", "Per-(planner, phase, task) statistics of a CSV");
    summarize->add_option("--in", in_path, "Benchmark CSV")->required();
    summarize->add_flag("--all-tasks", all_tasks, "Report every task instead of the first and eighth");

    std::string graph_scenario;
    std::string graph_out;
    std::optional<std::uint64_t> graph_seed;
    std::size_t graph_iters = 0;
    auto* export_graph = app.add_subcommand("export-graph", "Run LTR* over a scenario and dump its experience graph");
    export_graph->add_option("--scenario", graph_scenario, "Scenario JSON file")->required();
    export_graph->add_option("--seed", graph_seed, "Seed (default: the scenario's seed)");
    export_graph->add_option("--budget-iters", graph_iters, "Iteration cap per plan");
    export_graph->add_option("--out", graph_out, "Output edge list")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kConfigError;
    }

    try {
        if (*run) {
            cfg.planners = parse_planners(planner_names);
            if (budget_iters > 0) {
                cfg.max_iters = budget_iters;
            }
            return cmd_run(cfg, serial);
        }
        if (*summarize) {
            return cmd_summarize(in_path, all_tasks);
        }
        std::optional<std::size_t> iters;
        if (graph_iters > 0) {
            iters = graph_iters;
        }
        return cmd_export_graph(graph_scenario, graph_seed, iters, graph_out);
    } catch (const ltr::CsvSchemaError& e) {
        std::cerr << "csv schema error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }
}
