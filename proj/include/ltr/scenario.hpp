// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors
//
// Scenario documents (JSON). See docs/scenario_schema.md for the field list.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ltr/config.hpp"
#include "ltr/world.hpp"

namespace ltr {

struct PlannerParams {
    std::optional<double> gamma;                    // default: 1.1 x gamma*
    double step{0.1};                               // steering step
    std::optional<double> resolution;               // default: 0.01 x shortest workspace side
    double budget_s{10.0};                          // wall-clock budget per plan
    std::size_t max_iters{1000};                    // deterministic cap per plan
    std::uint64_t seed{1};
    std::optional<std::size_t> prm_query_interval;  // Lazy-PRM* cadence, default 50

    [[nodiscard]] double resolution_or_default(const Workspace& ws) const;
    [[nodiscard]] std::size_t query_interval_or_default() const { return prm_query_interval.value_or(50); }
};

struct Scenario {
    World world;
    Config start;
    std::vector<Task> tasks;
    PlannerParams params;
};

/// Parses and validates a scenario document. Throws ScenarioParseError for
/// schema violations (message names the field) and ScenarioValidationError
/// for invariant violations.
[[nodiscard]] Scenario load_scenario(std::string_view text);
[[nodiscard]] Scenario load_scenario_file(const std::string& path);

/// Canonical serialisation (sorted keys, two-space indent, trailing newline).
[[nodiscard]] std::string serialize_scenario(const Scenario& s);

}  // namespace ltr
