// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors
//
// Consecutive pick-and-place: for each task, plan to the object's grasp,
// pick it up, plan to the grasp at the target pose, place it.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltr/ltr_planner.hpp"
#include "ltr/scenario.hpp"

namespace ltr {

enum class PlannerKind { ltr, lazy_prm, birrt };

[[nodiscard]] const char* to_string(PlannerKind k) noexcept;
/// "ltr", "lazyprm" or "birrt"; nullopt otherwise.
[[nodiscard]] std::optional<PlannerKind> parse_planner(const std::string& name) noexcept;

enum class Phase { pick, place };

struct TaskRecord {
    std::string scenario;
    std::string planner;
    std::uint64_t seed{0};
    std::size_t task{0};  // 1-based
    Phase phase{Phase::pick};
    bool success{false};
    double first_solution_time_s{0};
    std::size_t first_solution_iters{0};
    double final_cost{0};
    std::size_t iterations{0};
    std::size_t collision_checks{0};
    std::string source;
    double plan_time_s{0};
};

struct SequenceOptions {
    std::optional<std::size_t> max_iters;  // overrides the scenario cap
    bool first_solution_only{false};
};

/// Every path returned during a sequence, with the world it was planned in.
struct SequenceTrace {
    struct Entry {
        World world;
        Path path;
    };
    std::vector<Entry> plans;
    /// Experience graph after the last task (LTR* and Lazy-PRM* only).
    std::optional<ExperienceGraph> final_graph;
};

/// Runs all tasks of the scenario with one planner. Plan k (0-based, two per
/// task) draws from Rng(seed).substream(k). Stops after the first failure,
/// which is recorded with success = false.
std::vector<TaskRecord> run_task_sequence(const Scenario& scenario, PlannerKind planner, std::uint64_t seed,
                                          const SequenceOptions& options = {}, const std::string& scenario_id = "",
                                          SequenceTrace* trace = nullptr);

}  // namespace ltr
