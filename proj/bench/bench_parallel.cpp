// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors
//
// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include <vector>

#include "ltr/bench.hpp"
#include "ltr/rng.hpp"
#include "ltr/scenario.hpp"
#include "ltr/world.hpp"

namespace {

const ltr::Scenario& golden() {
    static const ltr::Scenario s = ltr::load_scenario_file(LTR_SCENARIO_DIR "/golden_shelves.json");
    return s;
}

std::vector<ltr::Config> probes(std::size_t n) {
    ltr::Rng rng(7);
    std::vector<ltr::Config> out;
    const auto bounds = golden().world.config_bounds();
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(ltr::sample_uniform(rng, bounds));
    }
    return out;
}

void BM_ValidityMapSerial(benchmark::State& state) {
    const auto qs = probes(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ltr::validity_map_serial(golden().world, qs));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ValidityMapParallel(benchmark::State& state) {
    const auto qs = probes(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ltr::validity_map(golden().world, qs));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

ltr::BenchConfig grid() {
    ltr::BenchConfig cfg;
    cfg.scenario_paths = {LTR_SCENARIO_DIR "/golden_shelves.json"};
    cfg.planners = {ltr::PlannerKind::ltr, ltr::PlannerKind::birrt};
    cfg.repeats = 2;
    cfg.first_solution_only = true;
    cfg.max_iters = 300;
    return cfg;
}

void BM_GridSerial(benchmark::State& state) {
    const auto cfg = grid();
    const std::vector<ltr::NamedScenario> scenarios{{"golden_shelves", golden()}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(ltr::run_benchmark_serial(cfg, scenarios));
    }
}

void BM_GridParallel(benchmark::State& state) {
    const auto cfg = grid();
    const std::vector<ltr::NamedScenario> scenarios{{"golden_shelves", golden()}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(ltr::run_benchmark(cfg, scenarios));
    }
}

}  // namespace

BENCHMARK(BM_ValidityMapSerial)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_ValidityMapParallel)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_GridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
