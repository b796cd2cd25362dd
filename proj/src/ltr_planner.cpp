// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors

#include "ltr/ltr_planner.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <unordered_map>

#include "bidirectional.hpp"
#include "ltr/errors.hpp"

namespace ltr {

PlannerSettings PlannerSettings::from_scenario(const Scenario& s) {
    const SpaceBounds bounds = s.world.config_bounds();
    const std::size_t d = bounds.dim();
    const double mu = bounds.volume();
    RadiusSchedule sched = s.params.gamma ? RadiusSchedule(*s.params.gamma, d, mu)
                                          : RadiusSchedule::with_default_gamma(d, mu);
    return PlannerSettings{sched,
                           s.params.step,
                           s.params.resolution_or_default(s.world.workspace()),
                           s.params.budget_s,
                           s.params.max_iters,
                           false,
                           s.params.query_interval_or_default()};
}

const char* to_string(SolutionSource s) noexcept {
    switch (s) {
    case SolutionSource::tree_tree:
        return "tree_tree";
    case SolutionSource::graph_bootstrap:
        return "graph_bootstrap";
    case SolutionSource::roadmap:
        return "roadmap";
    default:
        return "none";
    }
}

Path assemble_bootstrap_path(const Tree& tree_a, std::size_t attach_a, const Path& graph_path, std::size_t attach_b,
                             const Tree& tree_b) {
    require(attach_a < tree_a.size() && attach_b < tree_b.size(), "bootstrap: attachment out of range");
    require(!graph_path.waypoints.empty(), "bootstrap: empty graph path");
    require(tree_a.config(attach_a) == graph_path.waypoints.front(), "bootstrap: junction mismatch at tree_a");
    require(tree_b.config(attach_b) == graph_path.waypoints.back(), "bootstrap: junction mismatch at tree_b");
    Path out = tree_a.path_from_root(attach_a);
    out.waypoints.insert(out.waypoints.end(), graph_path.waypoints.begin() + 1, graph_path.waypoints.end());
    Path tail = tree_b.path_from_root(attach_b);
    out.waypoints.insert(out.waypoints.end(), tail.waypoints.rbegin() + 1, tail.waypoints.rend());
    return out;
}

PlanOutcome plan_trajectory(PlannerState& state, const Config& q_init, const Config& q_target, const World& world,
                            Rng rng, PlanTrace* trace) {
    return detail::run_bidirectional(state.settings, q_init, q_target, world, std::move(rng), &state.graph, trace);
}

namespace detail {

namespace {

using Clock = std::chrono::steady_clock;
constexpr std::size_t kNone = static_cast<std::size_t>(-1);
constexpr double kInf = std::numeric_limits<double>::infinity();

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// A tree-graph attachment: tree node that is a copy of an experience vertex.
struct Attachment {
    std::size_t node;
    std::size_t vertex;
};

}  // namespace

PlanOutcome run_bidirectional(const PlannerSettings& settings, const Config& q_init, const Config& q_target,
                              const World& world, Rng rng, ExperienceGraph* experience, PlanTrace* trace) {
    const auto t0 = Clock::now();
    const CollisionChecker checker(world, settings.resolution);
    require(checker.config_valid(q_init), "plan: q_init is not a valid configuration");
    require(checker.config_valid(q_target), "plan: q_target is not a valid configuration");

    const RadiusSchedule& sched = settings.schedule;
    const SpaceBounds bounds = world.config_bounds();
    Tree trees[2] = {Tree(q_init), Tree(q_target)};
    Rng streams[2] = {rng.substream(0), rng.substream(1)};

    // Task-local graph G' seeded with both roots; graph_id maps tree nodes to G' vertices.
    const bool learn = experience != nullptr;
    ExperienceGraph local(q_init.dim(), learn ? experience->epoch() : 0);
    std::vector<std::size_t> graph_id[2];
    if (learn) {
        graph_id[0].push_back(local.add_vertex(q_init));
        graph_id[1].push_back(local.add_vertex(q_target));
    }
    std::vector<Attachment> attachments[2];
    std::unordered_map<std::size_t, std::size_t> absorbed[2];  // experience vertex -> tree node

    std::vector<std::pair<std::size_t, std::size_t>> links;  // (init-tree node, target-tree node)
    std::size_t best_link = kNone;
    auto link_cost = [&](std::size_t i) {
        const auto [a, b] = links[i];
        return trees[0].cost(a) + distance(trees[0].config(a), trees[1].config(b)) + trees[1].cost(b);
    };
    std::optional<Path> bootstrap;
    double bootstrap_cost = kInf;
    auto best_cost = [&] { return std::min(bootstrap_cost, best_link == kNone ? kInf : link_cost(best_link)); };

    PlanOutcome out;
    bool stop = false;
    for (std::size_t iter = 1; iter <= settings.max_iters && !stop; ++iter) {
        if (seconds_since(t0) > settings.budget_s) {
            break;
        }
        out.iterations = iter;
        for (int t = 0; t < 2 && !stop; ++t) {
            Tree& tree = trees[t];
            Tree& other = trees[1 - t];
            const Config q_rand = sample_uniform(streams[t], bounds);
            const auto ext = extend_rewire(tree, q_rand, checker, sched, settings.step);
            if (!ext) {
                continue;
            }
            const std::size_t v_new = ext->node;
            const Config q_new = tree.config(v_new);

            if (learn) {
                graph_id[t].resize(tree.size(), kNone);
                const std::size_t parent_id = graph_id[t][ext->parent];
                graph_id[t][v_new] = local.add_vertex_lazy(
                    q_new, sched.radius(local.vertex_count() + 1),
                    parent_id == kNone ? std::nullopt : std::optional<std::size_t>(parent_id));
            }

            if (const auto hit = bridge_to(tree, v_new, other, checker)) {
                links.emplace_back(t == 0 ? v_new : *hit, t == 0 ? *hit : v_new);
                if (best_link == kNone || link_cost(links.size() - 1) < link_cost(best_link)) {
                    best_link = links.size() - 1;
                }
            }

            bool attached_now = false;
            if (learn && !experience->empty()) {
                const double eps = sched.radius(experience->vertex_count());
                for (const auto& nb : experience->index().within_radius(q_new, eps)) {
                    if (absorbed[t].contains(nb.id)) {
                        continue;
                    }
                    const Config& qv = experience->vertex(nb.id);
                    if (checker.motion_valid(q_new, qv)) {
                        const std::size_t node = insert_with_rewire(tree, qv, v_new, checker, sched);
                        attachments[t].push_back({node, nb.id});
                        absorbed[t].emplace(nb.id, node);
                        attached_now = true;
                    }
                }
            }

            if (learn && attached_now && !bootstrap && best_link == kNone && !attachments[0].empty() &&
                !attachments[1].empty()) {
                std::vector<Terminal> sources, targets;
                for (const auto& a : attachments[0]) {
                    sources.push_back({a.vertex, trees[0].cost(a.node)});
                }
                for (const auto& a : attachments[1]) {
                    targets.push_back({a.vertex, trees[1].cost(a.node)});
                }
                if (const auto gp = experience->lazy_shortest_path(sources, targets, checker)) {
                    bootstrap = assemble_bootstrap_path(trees[0], absorbed[0].at(gp->vertices.front()),
                                                        experience->to_path(*gp),
                                                        absorbed[1].at(gp->vertices.back()), trees[1]);
                    bootstrap_cost = path_cost(*bootstrap);
                }
            }

            if (!out.first_solution_iteration && best_cost() < kInf) {
                out.first_solution_iteration = iter;
                out.first_solution_time_s = seconds_since(t0);
                out.first_source = bootstrap ? SolutionSource::graph_bootstrap : SolutionSource::tree_tree;
                stop = settings.first_solution_only;
            }
        }
        if (trace) {
            trace->best_cost.push_back(best_cost());
        }
    }

    // Rewiring may have made an older link the cheapest.
    for (std::size_t i = 0; i < links.size(); ++i) {
        if (link_cost(i) < link_cost(best_link)) {
            best_link = i;
        }
    }
    if (best_link != kNone && link_cost(best_link) <= bootstrap_cost) {
        out.path = join_trees(trees[0], links[best_link].first, trees[1], links[best_link].second);
        out.source = SolutionSource::tree_tree;
    } else if (bootstrap) {
        out.path = std::move(bootstrap);
        out.source = SolutionSource::graph_bootstrap;
    }
    if (out.path) {
        out.final_cost = path_cost(*out.path);
    }

    if (learn) {
        experience->merge(local, sched.radius(experience->vertex_count() + local.vertex_count()));
    }
    if (trace) {
        trace->init_tree = trees[0].configs();
        trace->target_tree = trees[1].configs();
    }
    out.collision_checks = checker.state_checks();
    out.plan_time_s = seconds_since(t0);
    return out;
}

}  // namespace detail

}  // namespace ltr
