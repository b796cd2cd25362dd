// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors

#include <chrono>
#include <limits>

#include "bidirectional.hpp"
#include "ltr/errors.hpp"
#include "ltr/ltr_planner.hpp"

namespace ltr {

PlanOutcome birrt_star_plan(const PlannerSettings& settings, const Config& q_init, const Config& q_target,
                            const World& world, Rng rng, PlanTrace* trace) {
    return detail::run_bidirectional(settings, q_init, q_target, world, std::move(rng), nullptr, trace);
}

namespace {

constexpr std::size_t kMaxRejections = 1000;

// Reuses an existing vertex at exactly q (task endpoints repeat across tasks).
std::size_t vertex_for(ExperienceGraph& g, const Config& q, const RadiusSchedule& sched) {
    if (!g.empty()) {
        const Neighbor nb = g.index().nearest(q);
        if (nb.distance == 0.0) {
            return nb.id;
        }
    }
    return g.add_vertex_lazy(q, sched.radius(g.vertex_count() + 1));
}

}  // namespace

PlanOutcome lazy_prm_star_plan(ExperienceGraph& g, const PlannerSettings& settings, const Config& q_init,
                               const Config& q_target, const World& world, Rng rng, PlanTrace* trace) {
    using Clock = std::chrono::steady_clock;
    const auto t0 = Clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

    const CollisionChecker checker(world, settings.resolution);
    require(checker.config_valid(q_init), "plan: q_init is not a valid configuration");
    require(checker.config_valid(q_target), "plan: q_target is not a valid configuration");
    require(settings.prm_query_interval > 0, "lazy_prm_star: query interval must be positive");

    const RadiusSchedule& sched = settings.schedule;
    const SpaceBounds bounds = world.config_bounds();
    Rng sampler = rng.substream(0);
    const std::size_t src = vertex_for(g, q_init, sched);
    const std::size_t dst = vertex_for(g, q_target, sched);

    PlanOutcome out;
    std::optional<GraphPath> best;
    auto query = [&](std::size_t iter) {
        auto gp = g.lazy_shortest_path(src, dst, checker);
        if (gp && (!best || gp->cost < best->cost)) {
            best = std::move(gp);
            if (!out.first_solution_iteration) {
                out.first_solution_iteration = iter;
                out.first_solution_time_s = elapsed();
                out.first_source = SolutionSource::roadmap;
            }
        }
    };

    // The persisted roadmap may already connect the endpoints.
    if (g.vertex_count() > 2) {
        query(0);
    }
    for (std::size_t iter = 1; iter <= settings.max_iters; ++iter) {
        if ((settings.first_solution_only && best) || elapsed() > settings.budget_s) {
            break;
        }
        out.iterations = iter;
        for (std::size_t tries = 0; tries < kMaxRejections; ++tries) {
            Config q = sample_uniform(sampler, bounds);
            if (checker.config_valid(q)) {
                g.add_vertex_lazy(q, sched.radius(g.vertex_count() + 1));
                break;
            }
        }
        if (iter % settings.prm_query_interval == 0) {
            query(iter);
        }
        if (trace) {
            trace->best_cost.push_back(best ? best->cost : std::numeric_limits<double>::infinity());
        }
    }
    if (best) {
        out.path = g.to_path(*best);
        if (out.path->waypoints.size() == 1) {
            out.path->waypoints.push_back(out.path->waypoints.front());
        }
        out.final_cost = path_cost(*out.path);
        out.source = SolutionSource::roadmap;
    }
    out.collision_checks = checker.state_checks();
    out.plan_time_s = elapsed();
    return out;
}

}  // namespace ltr
