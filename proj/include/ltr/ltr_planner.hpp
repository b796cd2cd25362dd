// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors
//
// Lazy Tree-based Replanner: bidirectional RRT* that records its vertices
// into a lazy experience graph, and reuses graphs from earlier tasks to
// bootstrap a solution with a lazy shortest-path search.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ltr/config.hpp"
#include "ltr/experience_graph.hpp"
#include "ltr/rng.hpp"
#include "ltr/scenario.hpp"
#include "ltr/tree.hpp"
#include "ltr/world.hpp"

namespace ltr {

struct PlannerSettings {
    RadiusSchedule schedule;
    double step;
    double resolution;
    double budget_s;
    std::size_t max_iters;
    bool first_solution_only{false};
    std::size_t prm_query_interval{50};

    /// Settings from a scenario's parameters (gamma defaults to 1.1 gamma*
    /// over the configuration-space box volume).
    [[nodiscard]] static PlannerSettings from_scenario(const Scenario& s);
};

enum class SolutionSource { none, tree_tree, graph_bootstrap, roadmap };

[[nodiscard]] const char* to_string(SolutionSource s) noexcept;

struct PlanOutcome {
    std::optional<Path> path;
    std::optional<double> first_solution_time_s;
    std::optional<double> final_cost;   // == path_cost(*path)
    std::size_t iterations{0};
    std::optional<std::size_t> first_solution_iteration;
    std::size_t collision_checks{0};    // configuration checks, including those inside motion checks
    SolutionSource source{SolutionSource::none};        // producer of the returned path
    SolutionSource first_source{SolutionSource::none};  // producer of the first solution
    double plan_time_s{0};
};

/// Optional per-call trace for tests.
struct PlanTrace {
    std::vector<Config> init_tree;     // insertion order
    std::vector<Config> target_tree;
    std::vector<double> best_cost;     // after each iteration; +inf before the first solution
};

/// The persistent part of LTR*: the lazy experience graph.
struct PlannerState {
    explicit PlannerState(PlannerSettings s, std::size_t dim) : settings(std::move(s)), graph(dim) {}

    PlannerSettings settings;
    ExperienceGraph graph;
};

/// One planning request. Throws ContractViolation if an endpoint is invalid
/// in `world`. Running out of budget yields an outcome without a path. The
/// task-local graph is merged into state.graph before returning.
PlanOutcome plan_trajectory(PlannerState& state, const Config& q_init, const Config& q_target, const World& world,
                            Rng rng, PlanTrace* trace = nullptr);

/// tree_a root -> attach_a, graph path, attach_b -> tree_b root, with the two
/// junction duplicates removed. Throws ContractViolation if the graph path
/// does not start at attach_a and end at attach_b.
[[nodiscard]] Path assemble_bootstrap_path(const Tree& tree_a, std::size_t attach_a, const Path& graph_path,
                                           std::size_t attach_b, const Tree& tree_b);

/// Plain bidirectional RRT*: a fresh structure per call, nothing persists.
PlanOutcome birrt_star_plan(const PlannerSettings& settings, const Config& q_init, const Config& q_target,
                            const World& world, Rng rng, PlanTrace* trace = nullptr);

/// Lazy-PRM*: rejection-sampled valid vertices connected lazily within
/// eps_n, with a lazy shortest-path query every prm_query_interval
/// insertions. `g` persists across calls; the caller begins epochs.
PlanOutcome lazy_prm_star_plan(ExperienceGraph& g, const PlannerSettings& settings, const Config& q_init,
                               const Config& q_target, const World& world, Rng rng, PlanTrace* trace = nullptr);

}  // namespace ltr
