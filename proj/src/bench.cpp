// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors

#include "ltr/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "ltr/errors.hpp"

namespace ltr {

void BenchConfig::validate() const {
    require(!scenario_paths.empty(), "bench: at least one scenario is required");
    require(!planners.empty(), "bench: at least one planner is required");
    require(repeats >= 1, "bench: repeats must be >= 1");
    require(!max_iters || *max_iters >= 1, "bench: iteration cap must be >= 1");
}

std::vector<NamedScenario> load_scenarios(const std::vector<std::string>& paths) {
    std::vector<NamedScenario> out;
    for (const auto& p : paths) {
        out.push_back({std::filesystem::path(p).stem().string(), load_scenario_file(p)});
    }
    return out;
}

namespace {

struct Job {
    std::size_t scenario;
    PlannerKind planner;
    std::size_t repeat;
};

std::vector<Job> make_jobs(const BenchConfig& cfg, const std::vector<NamedScenario>& scenarios) {
    std::vector<Job> jobs;
    for (std::size_t s = 0; s < scenarios.size(); ++s) {
        for (const auto p : cfg.planners) {
            for (std::size_t r = 0; r < cfg.repeats; ++r) {
                jobs.push_back({s, p, r});
            }
        }
    }
    return jobs;
}

std::vector<TaskRecord> run_job(const BenchConfig& cfg, const std::vector<NamedScenario>& scenarios, const Job& job) {
    SequenceOptions opts;
    opts.first_solution_only = cfg.first_solution_only;
    opts.max_iters = cfg.max_iters;
    const auto& ns = scenarios[job.scenario];
    return run_task_sequence(ns.scenario, job.planner, cfg.seed_base + job.repeat, opts, ns.id);
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* phase_name(Phase p) { return p == Phase::pick ? "pick" : "place"; }

}  // namespace

std::vector<TaskRecord> run_benchmark(const BenchConfig& cfg, const std::vector<NamedScenario>& scenarios,
                                      const JobSink& sink) {
    cfg.validate();
    const auto jobs = make_jobs(cfg, scenarios);
    std::vector<std::vector<TaskRecord>> results(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    const auto n = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            results[idx] = run_job(cfg, scenarios, jobs[idx]);
            if (sink) {
#pragma omp critical(ltr_bench_sink)
                sink(results[idx]);
            }
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    std::vector<TaskRecord> rows;
    for (auto& r : results) {
        rows.insert(rows.end(), r.begin(), r.end());
    }
    sort_records(rows);
    return rows;
}

std::vector<TaskRecord> run_benchmark_serial(const BenchConfig& cfg, const std::vector<NamedScenario>& scenarios,
                                             const JobSink& sink) {
    cfg.validate();
    std::vector<TaskRecord> rows;
    for (const auto& job : make_jobs(cfg, scenarios)) {
        auto r = run_job(cfg, scenarios, job);
        if (sink) {
            sink(r);
        }
        rows.insert(rows.end(), r.begin(), r.end());
    }
    sort_records(rows);
    return rows;
}

void sort_records(std::vector<TaskRecord>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const TaskRecord& a, const TaskRecord& b) {
        return std::tie(a.scenario, a.planner, a.seed, a.task, a.phase) <
               std::tie(b.scenario, b.planner, b.seed, b.task, b.phase);
    });
}

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols = {
        "scenario",   "planner",          "seed",        "task",         "phase",
        "success",    "first_solution_time_s", "first_solution_iters", "final_cost", "iterations",
        "collision_checks", "source",     "plan_time_s"};
    return cols;
}

std::string csv_header() {
    std::string h;
    for (const auto& c : csv_columns()) {
        h += (h.empty() ? "" : ",") + c;
    }
    return h;
}

std::string csv_row(const TaskRecord& r) {
    std::ostringstream s;
    s << r.scenario << ',' << r.planner << ',' << r.seed << ',' << r.task << ',' << phase_name(r.phase) << ','
      << (r.success ? 1 : 0) << ',' << fmt17(r.first_solution_time_s) << ',' << r.first_solution_iters << ','
      << fmt17(r.final_cost) << ',' << r.iterations << ',' << r.collision_checks << ',' << r.source << ','
      << fmt17(r.plan_time_s);
    return s.str();
}

void write_csv(std::ostream& out, const std::vector<TaskRecord>& rows) {
    out << csv_header() << '\n';
    for (const auto& r : rows) {
        out << csv_row(r) << '\n';
    }
}

std::vector<TaskRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw CsvSchemaError("csv: missing header");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != csv_header()) {
        std::vector<std::string> got;
        std::stringstream hs(line);
        std::string name;
        while (std::getline(hs, name, ',')) {
            got.push_back(name);
        }
        const auto& want = csv_columns();
        std::size_t col = 0;
        while (col < got.size() && col < want.size() && got[col] == want[col]) {
            ++col;
        }
        const std::string expected = col < want.size() ? "'" + want[col] + "'" : "end of header";
        const std::string found = col < got.size() ? "'" + got[col] + "'" : "end of header";
        throw CsvSchemaError("csv header column " + std::to_string(col + 1) + ": expected " + expected + ", found " +
                             found);
    }
    std::vector<TaskRecord> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            f.push_back(cell);
        }
        if (f.size() != csv_columns().size()) {
            throw CsvSchemaError("csv line " + std::to_string(lineno) + ": expected " +
                                 std::to_string(csv_columns().size()) + " fields");
        }
        auto field_error = [&](std::size_t col) {
            return CsvSchemaError("csv line " + std::to_string(lineno) + ": bad value in column '" +
                                  csv_columns()[col] + "'");
        };
        auto to_u = [&](std::size_t col) -> std::uint64_t {
            try {
                std::size_t pos = 0;
                const auto v = std::stoull(f[col], &pos);
                if (pos != f[col].size()) {
                    throw field_error(col);
                }
                return v;
            } catch (const std::logic_error&) {
                throw field_error(col);
            }
        };
        auto to_d = [&](std::size_t col) -> double {
            try {
                std::size_t pos = 0;
                const double v = std::stod(f[col], &pos);
                if (pos != f[col].size()) {
                    throw field_error(col);
                }
                return v;
            } catch (const std::logic_error&) {
                throw field_error(col);
            }
        };
        TaskRecord r;
        r.scenario = f[0];
        r.planner = f[1];
        r.seed = to_u(2);
        r.task = to_u(3);
        if (f[4] == "pick") {
            r.phase = Phase::pick;
        } else if (f[4] == "place") {
            r.phase = Phase::place;
        } else {
            throw field_error(4);
        }
        if (f[5] != "0" && f[5] != "1") {
            throw field_error(5);
        }
        r.success = f[5] == "1";
        r.first_solution_time_s = to_d(6);
        r.first_solution_iters = to_u(7);
        r.final_cost = to_d(8);
        r.iterations = to_u(9);
        r.collision_checks = to_u(10);
        r.source = f[11];
        r.plan_time_s = to_d(12);
        rows.push_back(r);
    }
    return rows;
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
    require(!sorted.empty(), "quantile of an empty sample");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Stats describe(std::vector<double> values) {
    Stats s;
    s.n = values.size();
    if (values.empty()) {
        return s;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(s.n);
    if (s.n > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - s.mean) * (v - s.mean);
        }
        s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    std::sort(values.begin(), values.end());
    s.median = quantile_sorted(values, 0.5);
    s.q1 = quantile_sorted(values, 0.25);
    s.q3 = quantile_sorted(values, 0.75);
    return s;
}

std::vector<SummaryRow> summarize(const std::vector<TaskRecord>& rows, const std::set<std::size_t>& tasks) {
    struct Group {
        std::vector<double> time, cost, iters;
    };
    std::map<std::tuple<std::string, Phase, std::size_t>, Group> groups;
    for (const auto& r : rows) {
        if (!r.success || (!tasks.empty() && !tasks.contains(r.task))) {
            continue;
        }
        auto& g = groups[{r.planner, r.phase, r.task}];
        g.time.push_back(r.first_solution_time_s);
        g.cost.push_back(r.final_cost);
        g.iters.push_back(static_cast<double>(r.first_solution_iters));
    }
    std::vector<SummaryRow> out;
    for (const auto& [key, g] : groups) {
        out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), describe(g.time), describe(g.cost),
                       describe(g.iters)});
    }
    return out;
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "planner,phase,task,n,time_mean,time_std,time_median,time_q1,time_q3,"
           "cost_mean,cost_std,cost_median,cost_q1,cost_q3,iters_median,iters_q1,iters_q3\n";
    for (const auto& r : rows) {
        out << r.planner << ',' << phase_name(r.phase) << ',' << r.task << ',' << r.time.n << ','
            << fmt17(r.time.mean) << ',' << fmt17(r.time.stddev) << ',' << fmt17(r.time.median) << ','
            << fmt17(r.time.q1) << ',' << fmt17(r.time.q3) << ',' << fmt17(r.cost.mean) << ','
            << fmt17(r.cost.stddev) << ',' << fmt17(r.cost.median) << ',' << fmt17(r.cost.q1) << ','
            << fmt17(r.cost.q3) << ',' << fmt17(r.iters.median) << ',' << fmt17(r.iters.q1) << ','
            << fmt17(r.iters.q3) << '\n';
    }
}

}  // namespace ltr
