// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors

#pragma once

#include "ltr/ltr_planner.hpp"

namespace ltr::detail {

/// Shared bidirectional RRT* loop. With `experience` null this is plain
/// bidirectional RRT*; otherwise it records a task-local graph, connects to
/// `experience`, bootstraps through it and merges at the end.
PlanOutcome run_bidirectional(const PlannerSettings& settings, const Config& q_init, const Config& q_target,
                              const World& world, Rng rng, ExperienceGraph* experience, PlanTrace* trace);

}  // namespace ltr::detail
