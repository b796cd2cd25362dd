// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ltr/errors.hpp"
#include "ltr/ltr_planner.hpp"
#include "ltr/scenario.hpp"
#include "ltr/task_sequence.hpp"
#include "support/oracles.hpp"

namespace ltr {
namespace {

Scenario golden() { return load_scenario_file(std::string(LTR_SCENARIO_DIR) + "/golden_shelves.json"); }

PlannerSettings settings_for(const World& w, std::size_t max_iters, double step, double resolution) {
    const auto b = w.config_bounds();
    return PlannerSettings{RadiusSchedule::with_default_gamma(b.dim(), b.volume()), step, resolution, 600.0,
                           max_iters, false, 50};
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Config random_valid(Rng& rng, const World& w) {
    while (true) {
        const Config q = sample_uniform(rng, w.config_bounds());
        if (w.config_valid(q)) {
            return q;
        }
    }
}

// ---------------------------------------------------------------- reduction to bidirectional RRT*

TEST(LtrPlanner, EmptyGraphReproducesBidirectionalRrtStar) {
    Rng world_rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<StaticObstacle> statics;
        for (int k = 0; k < 5; ++k) {
            statics.push_back({geom::Disc{world_rng.uniform(0.2, 0.6)},
                               geom::Pose{world_rng.uniform(0, 5), world_rng.uniform(0, 5), 0}});
        }
        const World w(Workspace{{0, 0}, {5, 5}}, statics, {}, RobotModel{});
        const Config qi = random_valid(world_rng, w), qt = random_valid(world_rng, w);
        const PlannerSettings s = settings_for(w, 400, 0.3, 0.02);
        PlannerState state(s, 2);
        PlanTrace lt, bt;
        const auto lo = plan_trajectory(state, qi, qt, w, Rng(1000 + trial), &lt);
        const auto bo = birrt_star_plan(s, qi, qt, w, Rng(1000 + trial), &bt);
        EXPECT_EQ(lt.init_tree, bt.init_tree);
        EXPECT_EQ(lt.target_tree, bt.target_tree);
        EXPECT_EQ(lt.best_cost, bt.best_cost);
        EXPECT_EQ(lo.path, bo.path);
        EXPECT_EQ(lo.iterations, bo.iterations);
        EXPECT_EQ(lo.first_solution_iteration, bo.first_solution_iteration);
        // LTR* still records its experience; the baseline keeps nothing.
        EXPECT_GT(state.graph.vertex_count(), 0u);
    }
}

// ---------------------------------------------------------------- bootstrap

TEST(LtrPlanner, SecondQueryBootstrapsFromExperience) {
    const Scenario sc = golden();
    const World w(sc.world.workspace(), sc.world.static_obstacles(), {}, sc.world.robot());
    PlannerSettings s = PlannerSettings::from_scenario(sc);
    s.max_iters = 300;
    std::vector<double> reuse, fresh;
    int bootstrapped = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        PlannerState state(s, 2);
        const auto first = plan_trajectory(state, Config{8.5, 1.0}, Config{1.0, 1.2}, w, Rng(seed));
        ASSERT_TRUE(first.path.has_value());
        state.graph.begin_epoch();
        PlannerState control(s, 2);
        state.settings.first_solution_only = true;
        control.settings.first_solution_only = true;
        const Config qi{8.4, 1.1}, qt{1.1, 1.3};
        const auto again = plan_trajectory(state, qi, qt, w, Rng(seed + 500));
        const auto cold = plan_trajectory(control, qi, qt, w, Rng(seed + 500));
        ASSERT_TRUE(again.first_solution_iteration.has_value());
        ASSERT_TRUE(cold.first_solution_iteration.has_value());
        bootstrapped += again.source == SolutionSource::graph_bootstrap ? 1 : 0;
        reuse.push_back(static_cast<double>(*again.first_solution_iteration));
        fresh.push_back(static_cast<double>(*cold.first_solution_iteration));
        EXPECT_TRUE(oracle::path_free(w, *again.path, s.resolution));
    }
    EXPECT_GE(bootstrapped, 15);
    EXPECT_LT(median(reuse), median(fresh));
}

TEST(LtrPlanner, InvalidEndpointIsPreconditionError) {
    const World w(Workspace{{0, 0}, {4, 4}}, {StaticObstacle{geom::Disc{0.5}, geom::Pose{2, 2, 0}}}, {},
                  RobotModel{});
    const PlannerSettings s = settings_for(w, 10, 0.3, 0.02);
    PlannerState state(s, 2);
    EXPECT_THROW((void)plan_trajectory(state, Config{2, 2}, Config{0.5, 0.5}, w, Rng(1)), ContractViolation);
    EXPECT_THROW((void)plan_trajectory(state, Config{0.5, 0.5}, Config{2, 2.2}, w, Rng(1)), ContractViolation);
    EXPECT_THROW((void)birrt_star_plan(s, Config{2, 2}, Config{0.5, 0.5}, w, Rng(1)), ContractViolation);
    ExperienceGraph g(2);
    EXPECT_THROW((void)lazy_prm_star_plan(g, s, Config{2, 2}, Config{0.5, 0.5}, w, Rng(1)), ContractViolation);
}

TEST(LtrPlanner, ExhaustedBudgetIsNotAnError) {
    const World w(Workspace{{0, 0}, {4, 4}},
                  {StaticObstacle{geom::Polygon{{{-0.1, -2}, {0.1, -2}, {0.1, 2}, {-0.1, 2}}}, geom::Pose{2, 2, 0}}},
                  {}, RobotModel{});
    const PlannerSettings s = settings_for(w, 50, 0.3, 0.02);
    PlannerState state(s, 2);
    const auto o = plan_trajectory(state, Config{0.5, 2}, Config{3.5, 2}, w, Rng(1));
    EXPECT_FALSE(o.path.has_value());
    EXPECT_FALSE(o.final_cost.has_value());
    EXPECT_EQ(o.iterations, 50u);
}

TEST(LtrPlanner, OutcomeCostMatchesPath) {
    const Scenario sc = golden();
    const World w(sc.world.workspace(), sc.world.static_obstacles(), {}, sc.world.robot());
    PlannerSettings s = PlannerSettings::from_scenario(sc);
    s.max_iters = 200;
    PlannerState state(s, 2);
    PlanTrace trace;
    const auto o = plan_trajectory(state, Config{8.5, 3}, Config{1.5, 2}, w, Rng(4), &trace);
    ASSERT_TRUE(o.path.has_value());
    ASSERT_TRUE(o.first_solution_time_s.has_value());
    double sum = 0.0;
    for (std::size_t i = 1; i < o.path->waypoints.size(); ++i) {
        sum += oracle::euclid(o.path->waypoints[i - 1], o.path->waypoints[i]);
    }
    EXPECT_NEAR(*o.final_cost, sum, 1e-9);
    EXPECT_EQ(o.path->waypoints.front(), (Config{8.5, 3}));
    EXPECT_EQ(o.path->waypoints.back(), (Config{1.5, 2}));
    ASSERT_EQ(trace.best_cost.size(), o.iterations);
    EXPECT_DOUBLE_EQ(trace.best_cost.back(), *o.final_cost);
}

TEST(LtrPlanner, BestCostNeverIncreases) {
    const Scenario sc = golden();
    const World w(sc.world.workspace(), sc.world.static_obstacles(), {}, sc.world.robot());
    PlannerSettings s = PlannerSettings::from_scenario(sc);
    s.max_iters = 150;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        PlannerState state(s, 2);
        for (int k = 0; k < 3; ++k) {
            state.graph.begin_epoch();
            PlanTrace trace;
            (void)plan_trajectory(state, Config{8.5, 0.5 + k}, Config{1.5, 5.5 - k}, w, Rng(seed * 10 + k), &trace);
            for (std::size_t i = 1; i < trace.best_cost.size(); ++i) {
                ASSERT_LE(trace.best_cost[i], trace.best_cost[i - 1]);
            }
        }
        PlanTrace bt;
        (void)birrt_star_plan(s, Config{8.5, 3}, Config{1.5, 3}, w, Rng(seed), &bt);
        for (std::size_t i = 1; i < bt.best_cost.size(); ++i) {
            ASSERT_LE(bt.best_cost[i], bt.best_cost[i - 1]);
        }
    }
}

// ---------------------------------------------------------------- bootstrap assembly

TEST(Bootstrap, JoinsTreesThroughGraphPath) {
    Tree a(Config{0, 0});
    const auto na = a.add(Config{1, 0}, 0);
    Tree b(Config{5, 0});
    const auto nb = b.add(Config{4, 0}, 0);
    const Path graph{{Config{1, 0}, Config{2.5, 1}, Config{4, 0}}};
    const Path p = assemble_bootstrap_path(a, na, graph, nb, b);
    EXPECT_EQ(p.waypoints.size(), 5u);
    EXPECT_EQ(p, (Path{{Config{0, 0}, Config{1, 0}, Config{2.5, 1}, Config{4, 0}, Config{5, 0}}}));
    const double graph_cost = oracle::euclid(graph.waypoints[0], graph.waypoints[1]) +
                              oracle::euclid(graph.waypoints[1], graph.waypoints[2]);
    EXPECT_NEAR(path_cost(p), a.cost(na) + graph_cost + b.cost(nb), 1e-12);
}

TEST(Bootstrap, SingleVertexGraphPathIsTreeConcatenation) {
    Tree a(Config{0, 0});
    const auto na = a.add(Config{1, 1}, 0);
    Tree b(Config{2, 0});
    const auto nb = b.add(Config{1, 1}, 0);
    const Path p = assemble_bootstrap_path(a, na, Path{{Config{1, 1}}}, nb, b);
    EXPECT_EQ(p, join_trees(a, na, b, nb));
    EXPECT_EQ(p.waypoints.size(), 3u);
}

TEST(Bootstrap, JunctionMismatchThrows) {
    Tree a(Config{0, 0});
    const auto na = a.add(Config{1, 0}, 0);
    Tree b(Config{5, 0});
    const auto nb = b.add(Config{4, 0}, 0);
    EXPECT_THROW((void)assemble_bootstrap_path(a, na, Path{{Config{1.1, 0}, Config{4, 0}}}, nb, b),
                 ContractViolation);
    EXPECT_THROW((void)assemble_bootstrap_path(a, na, Path{{Config{1, 0}, Config{3, 0}}}, nb, b),
                 ContractViolation);
}

// ---------------------------------------------------------------- baselines

TEST(LazyPrm, VertexInsertionDoesNoMotionChecks) {
    const World w(Workspace{{0, 0}, {1, 1}}, {}, {}, RobotModel{});
    PlannerSettings s = settings_for(w, 300, 0.1, 0.01);
    s.prm_query_interval = 1000;  // never queries within the cap
    ExperienceGraph g(2);
    const auto o = lazy_prm_star_plan(g, s, Config{0.1, 0.1}, Config{0.9, 0.9}, w, Rng(3));
    // In an empty world every sample is accepted: two endpoint checks plus
    // one state check per iteration, so no motion check can have happened.
    EXPECT_EQ(o.collision_checks, 2u + 300u);
    EXPECT_GT(g.edge_count(), 0u);
    for (const auto& e : g.edges()) {
        ASSERT_EQ(e.state, EdgeState::unknown());
    }
    EXPECT_FALSE(o.path.has_value());
}

TEST(LazyPrm, VisibleEndpointsCostAtLeastStraightLine) {
    const World w(Workspace{{0, 0}, {1, 1}}, {}, {}, RobotModel{});
    const PlannerSettings s = settings_for(w, 200, 0.1, 0.01);
    ExperienceGraph g(2);
    const auto o = lazy_prm_star_plan(g, s, Config{0.1, 0.2}, Config{0.8, 0.7}, w, Rng(5));
    ASSERT_TRUE(o.path.has_value());
    EXPECT_GE(*o.final_cost, oracle::euclid(Config{0.1, 0.2}, Config{0.8, 0.7}) - 1e-12);
    EXPECT_EQ(o.source, SolutionSource::roadmap);
}

TEST(LazyPrm, NarrowPassageSolvedWithValidEdges) {
    // Wall at x = 2 with a 0.3-wide slot.
    const geom::Polygon post{{{-0.1, 0}, {0.1, 0}, {0.1, 1.85}, {-0.1, 1.85}}};
    const World w(Workspace{{0, 0}, {4, 4}},
                  {StaticObstacle{post, geom::Pose{2, 0, 0}}, StaticObstacle{post, geom::Pose{2, 2.15, 0}}}, {},
                  RobotModel{});
    const PlannerSettings s = settings_for(w, 1500, 0.3, 0.01);
    ExperienceGraph g(2);
    const auto o = lazy_prm_star_plan(g, s, Config{0.5, 0.5}, Config{3.5, 3.5}, w, Rng(8));
    ASSERT_TRUE(o.path.has_value());
    EXPECT_TRUE(oracle::path_free(w, *o.path, 0.01));
    for (std::size_t i = 1; i < o.path->waypoints.size(); ++i) {
        const auto u = g.index().nearest(o.path->waypoints[i - 1]).id;
        const auto v = g.index().nearest(o.path->waypoints[i]).id;
        EXPECT_EQ(g.edge(*g.find_edge(u, v)).state, EdgeState::valid_at(g.epoch()));
    }
}

TEST(Baselines, SameSeedSameOutcome) {
    const Scenario sc = golden();
    const World w(sc.world.workspace(), sc.world.static_obstacles(), {}, sc.world.robot());
    PlannerSettings s = PlannerSettings::from_scenario(sc);
    s.max_iters = 200;
    const auto b1 = birrt_star_plan(s, Config{8.5, 3}, Config{1.5, 2}, w, Rng(6));
    const auto b2 = birrt_star_plan(s, Config{8.5, 3}, Config{1.5, 2}, w, Rng(6));
    EXPECT_EQ(b1.path, b2.path);
    EXPECT_EQ(b1.collision_checks, b2.collision_checks);
    ExperienceGraph g1(2), g2(2);
    const auto p1 = lazy_prm_star_plan(g1, s, Config{8.5, 3}, Config{1.5, 2}, w, Rng(6));
    const auto p2 = lazy_prm_star_plan(g2, s, Config{8.5, 3}, Config{1.5, 2}, w, Rng(6));
    EXPECT_EQ(p1.path, p2.path);
    EXPECT_EQ(p1.collision_checks, p2.collision_checks);
}

TEST(Baselines, BidirectionalRrtStarConvergesOnUnitSquare) {
    const World w(Workspace{{0, 0}, {1, 1}}, {}, {}, RobotModel{});
    const PlannerSettings s = settings_for(w, 10000, 0.1, 0.01);
    const auto o = birrt_star_plan(s, Config{0, 0}, Config{1, 1}, w, Rng(1));
    ASSERT_TRUE(o.final_cost.has_value());
    EXPECT_LE(*o.final_cost, 1.05 * std::numbers::sqrt2);
    EXPECT_GE(*o.final_cost, std::numbers::sqrt2 - 1e-12);
}

// ---------------------------------------------------------------- task sequences

TEST(TaskSequence, EightTasksGiveSixteenRecords) {
    const Scenario sc = golden();
    SequenceOptions opt;
    opt.first_solution_only = true;
    for (const auto kind : {PlannerKind::ltr, PlannerKind::birrt, PlannerKind::lazy_prm}) {
        const auto recs = run_task_sequence(sc, kind, 3, opt, "golden");
        ASSERT_EQ(recs.size(), 16u) << to_string(kind);
        for (std::size_t i = 0; i < recs.size(); ++i) {
            EXPECT_EQ(recs[i].task, i / 2 + 1);
            EXPECT_EQ(recs[i].phase, i % 2 == 0 ? Phase::pick : Phase::place);
            EXPECT_TRUE(recs[i].success);
            EXPECT_EQ(recs[i].planner, to_string(kind));
            EXPECT_EQ(recs[i].scenario, "golden");
        }
    }
}

TEST(TaskSequence, SingleTaskGivesTwoRecords) {
    const Scenario sc = load_scenario_file(std::string(LTR_SCENARIO_DIR) + "/unit_square.json");
    SequenceOptions opt;
    opt.max_iters = 300;
    const auto recs = run_task_sequence(sc, PlannerKind::ltr, 1, opt);
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_TRUE(recs[0].success);
    EXPECT_TRUE(recs[1].success);
}

TEST(TaskSequence, DeterministicGivenSeed) {
    const Scenario sc = golden();
    SequenceOptions opt;
    opt.max_iters = 60;
    for (const auto kind : {PlannerKind::ltr, PlannerKind::birrt, PlannerKind::lazy_prm}) {
        const auto a = run_task_sequence(sc, kind, 11, opt);
        const auto b = run_task_sequence(sc, kind, 11, opt);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_EQ(a[i].success, b[i].success);
            EXPECT_EQ(a[i].first_solution_iters, b[i].first_solution_iters);
            EXPECT_EQ(a[i].final_cost, b[i].final_cost);
            EXPECT_EQ(a[i].iterations, b[i].iterations);
            EXPECT_EQ(a[i].collision_checks, b[i].collision_checks);
            EXPECT_EQ(a[i].source, b[i].source);
        }
    }
}

TEST(TaskSequence, EveryReturnedPathIsValidInItsWorld) {
    for (const char* file : {"golden_shelves.json", "arm_shelf.json"}) {
        const Scenario sc = load_scenario_file(std::string(LTR_SCENARIO_DIR) + "/" + file);
        const double res = sc.params.resolution_or_default(sc.world.workspace());
        for (const auto kind : {PlannerKind::ltr, PlannerKind::birrt, PlannerKind::lazy_prm}) {
            for (const bool first_only : {true, false}) {
                SequenceOptions opt;
                opt.first_solution_only = first_only;
                opt.max_iters = first_only ? std::optional<std::size_t>{} : std::optional<std::size_t>{80};
                SequenceTrace trace;
                const auto recs = run_task_sequence(sc, kind, 5, opt, "", &trace);
                const auto ok = static_cast<std::size_t>(
                    std::count_if(recs.begin(), recs.end(), [](const TaskRecord& r) { return r.success; }));
                ASSERT_EQ(trace.plans.size(), ok);
                EXPECT_GT(ok, 0u);
                for (const auto& entry : trace.plans) {
                    ASSERT_TRUE(oracle::path_free(entry.world, entry.path, res))
                        << file << " " << to_string(kind) << " first_only=" << first_only;
                }
            }
        }
    }
}

TEST(TaskSequence, PlannerNamesRoundTrip) {
    for (const auto kind : {PlannerKind::ltr, PlannerKind::birrt, PlannerKind::lazy_prm}) {
        EXPECT_EQ(parse_planner(to_string(kind)), kind);
    }
    EXPECT_FALSE(parse_planner("rrt").has_value());
}

}  // namespace
}  // namespace ltr
