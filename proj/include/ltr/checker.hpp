// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors

#pragma once

#include <cstddef>

#include "ltr/config.hpp"
#include "ltr/world.hpp"

namespace ltr {

/// World validity at a fixed resolution, with instrumentation counters.
/// Not thread-safe: one checker per planning call.
class CollisionChecker {
public:
    CollisionChecker(const World& world, double resolution) : world_(&world), resolution_(resolution) {}

    [[nodiscard]] const World& world() const noexcept { return *world_; }
    [[nodiscard]] double resolution() const noexcept { return resolution_; }

    bool config_valid(const Config& q) const {
        ++state_checks_;
        return world_->config_valid(q);
    }

    bool motion_valid(const Config& a, const Config& b) const {
        ++motion_checks_;
        return ltr::motion_valid(a, b, resolution_, [this](const Config& q) { return config_valid(q); });
    }

    /// Individual configuration checks, including those made by motion checks.
    [[nodiscard]] std::size_t state_checks() const noexcept { return state_checks_; }
    [[nodiscard]] std::size_t motion_checks() const noexcept { return motion_checks_; }

private:
    const World* world_;
    double resolution_;
    mutable std::size_t state_checks_{0};
    mutable std::size_t motion_checks_{0};
};

}  // namespace ltr
