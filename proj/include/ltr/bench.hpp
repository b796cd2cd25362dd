// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors
//
// Benchmark grid runner, CSV I/O and Table-style summaries.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ltr/scenario.hpp"
#include "ltr/task_sequence.hpp"

namespace ltr {

struct BenchConfig {
    std::vector<std::string> scenario_paths;
    std::vector<PlannerKind> planners;
    std::size_t repeats{1};
    std::uint64_t seed_base{0};
    std::string out_path;
    bool first_solution_only{false};
    std::optional<std::size_t> max_iters;

    void validate() const;  // throws ContractViolation
};

/// A loaded scenario and the id used in the CSV (file stem).
struct NamedScenario {
    std::string id;
    Scenario scenario;
};

[[nodiscard]] std::vector<NamedScenario> load_scenarios(const std::vector<std::string>& paths);

/// Called once per finished (scenario, planner, repeat) job, serialised.
using JobSink = std::function<void(const std::vector<TaskRecord>&)>;

/// Runs every (scenario, planner, repeat) job in an OpenMP worker pool.
/// Repeat r uses seed_base + r for every planner, so comparisons are paired.
/// Rows come back sorted, independent of scheduling.
[[nodiscard]] std::vector<TaskRecord> run_benchmark(const BenchConfig& cfg, const std::vector<NamedScenario>& scenarios,
                                                    const JobSink& sink = {});
/// Serial reference of run_benchmark.
[[nodiscard]] std::vector<TaskRecord> run_benchmark_serial(const BenchConfig& cfg,
                                                           const std::vector<NamedScenario>& scenarios,
                                                           const JobSink& sink = {});

/// Sort by (scenario, planner, seed, task, phase).
void sort_records(std::vector<TaskRecord>& rows);

[[nodiscard]] const std::vector<std::string>& csv_columns();
[[nodiscard]] std::string csv_header();
[[nodiscard]] std::string csv_row(const TaskRecord& r);
void write_csv(std::ostream& out, const std::vector<TaskRecord>& rows);
/// Throws CsvSchemaError on a header or field mismatch.
[[nodiscard]] std::vector<TaskRecord> read_csv(std::istream& in);

struct Stats {
    std::size_t n{0};
    double mean{0};
    double stddev{0};  // sample (n - 1); 0 for n == 1
    double median{0};
    double q1{0};      // linear-interpolation quartiles
    double q3{0};
};

[[nodiscard]] Stats describe(std::vector<double> values);
/// Linear interpolation between closest ranks, p in [0, 1]; values sorted.
[[nodiscard]] double quantile_sorted(const std::vector<double>& sorted, double p);

struct SummaryRow {
    std::string planner;
    Phase phase{Phase::pick};
    std::size_t task{0};
    Stats time;
    Stats cost;
    Stats iters;
};

/// Per (planner, phase, task) statistics over successful rows. Only tasks in
/// `tasks` are reported (all when empty); groups with no rows are omitted.
[[nodiscard]] std::vector<SummaryRow> summarize(const std::vector<TaskRecord>& rows,
                                                const std::set<std::size_t>& tasks = {1, 8});
void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace ltr
