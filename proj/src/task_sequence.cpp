// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors

#include "ltr/task_sequence.hpp"

#include "ltr/errors.hpp"

namespace ltr {

const char* to_string(PlannerKind k) noexcept {
    switch (k) {
    case PlannerKind::ltr:
        return "ltr";
    case PlannerKind::lazy_prm:
        return "lazyprm";
    case PlannerKind::birrt:
        return "birrt";
    }
    return "?";
}

std::optional<PlannerKind> parse_planner(const std::string& name) noexcept {
    if (name == "ltr") {
        return PlannerKind::ltr;
    }
    if (name == "lazyprm") {
        return PlannerKind::lazy_prm;
    }
    if (name == "birrt") {
        return PlannerKind::birrt;
    }
    return std::nullopt;
}

std::vector<TaskRecord> run_task_sequence(const Scenario& scenario, PlannerKind planner, std::uint64_t seed,
                                          const SequenceOptions& options, const std::string& scenario_id,
                                          SequenceTrace* trace) {
    PlannerSettings settings = PlannerSettings::from_scenario(scenario);
    settings.first_solution_only = options.first_solution_only;
    if (options.max_iters) {
        settings.max_iters = *options.max_iters;
    }
    const std::size_t dim = scenario.world.robot().dim();
    PlannerState state(settings, dim);  // LTR* graph; Lazy-PRM* reuses it as its roadmap
    const Rng root(seed);
    std::size_t plan_index = 0;

    std::vector<TaskRecord> records;
    World world = scenario.world;
    Config q = scenario.start;
    std::optional<std::string> released;

    auto plan = [&](const Config& from, const Config& to, const World& w) {
        Rng rng = root.substream(plan_index++);
        state.graph.begin_epoch();
        switch (planner) {
        case PlannerKind::ltr:
            return plan_trajectory(state, from, to, w, std::move(rng));
        case PlannerKind::lazy_prm:
            return lazy_prm_star_plan(state.graph, settings, from, to, w, std::move(rng));
        case PlannerKind::birrt:
            break;
        }
        return birrt_star_plan(settings, from, to, w, std::move(rng));
    };

    auto record = [&](std::size_t task, Phase phase, const PlanOutcome* o) {
        TaskRecord r;
        r.scenario = scenario_id;
        r.planner = to_string(planner);
        r.seed = seed;
        r.task = task;
        r.phase = phase;
        if (o) {
            r.success = o->path.has_value();
            r.first_solution_time_s = o->first_solution_time_s.value_or(0.0);
            r.first_solution_iters = o->first_solution_iteration.value_or(0);
            r.final_cost = o->final_cost.value_or(0.0);
            r.iterations = o->iterations;
            r.collision_checks = o->collision_checks;
            r.source = to_string(o->source);
            r.plan_time_s = o->plan_time_s;
        } else {
            r.source = to_string(SolutionSource::none);
        }
        records.push_back(r);
        return r.success;
    };

    auto attempt = [&](std::size_t task, Phase phase, const Config& from, const Config& to,
                       const World& w) -> bool {
        PlanOutcome o;
        try {
            o = plan(from, to, w);
        } catch (const ContractViolation&) {
            return record(task, phase, nullptr);
        }
        if (trace && o.path) {
            trace->plans.push_back({w, *o.path});
        }
        return record(task, phase, &o);
    };

    for (std::size_t i = 0; i < scenario.tasks.size(); ++i) {
        const Task& task = scenario.tasks[i];
        const std::size_t index = i + 1;
        const WorldObject object = world.object(task.object_id);

        World approach = world.allowing_contact(task.object_id);
        if (released) {
            approach = approach.allowing_contact(*released);
        }
        Config grasp;
        try {
            grasp = grasp_config(object, approach);
        } catch (const NoGraspConfig&) {
            record(index, Phase::pick, nullptr);
            break;
        }
        if (!attempt(index, Phase::pick, q, grasp, approach)) {
            break;
        }
        world = apply_pick(world, task.object_id, grasp);
        q = grasp;

        WorldObject at_target = object;
        at_target.pose = task.target;
        Config drop;
        try {
            drop = grasp_config(at_target, world);
        } catch (const NoGraspConfig&) {
            record(index, Phase::place, nullptr);
            break;
        }
        if (!attempt(index, Phase::place, q, drop, world)) {
            break;
        }
        world = apply_place(world, task.target, drop);
        q = drop;
        released = task.object_id;
    }
    if (trace && planner != PlannerKind::birrt) {
        trace->final_graph = state.graph;
    }
    return records;
}

}  // namespace ltr
