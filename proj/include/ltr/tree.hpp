// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors
//
// RRT* building blocks for the bidirectional planners: the rooted tree with
// eager cost propagation, the shrinking connection radius, extend with
// choose-parent and rewire, and tree-to-tree bridging.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ltr/checker.hpp"
#include "ltr/config.hpp"
#include "ltr/nn_index.hpp"

namespace ltr {

/// gamma * (log n / n)^(1/d) with n clamped to >= 2.
class RadiusSchedule {
public:
    /// Throws ContractViolation unless gamma > gamma_star(d, mu_upper).
    RadiusSchedule(double gamma, std::size_t d, double mu_upper);

    /// gamma = 1.1 * gamma_star(d, mu_upper).
    [[nodiscard]] static RadiusSchedule with_default_gamma(std::size_t d, double mu_upper);

    /// Volume of the unit d-ball, pi^(d/2) / Gamma(d/2 + 1).
    [[nodiscard]] static double unit_ball_volume(std::size_t d);
    /// 2 (1 + 1/d)^(1/d) (mu / xi_d)^(1/d).
    [[nodiscard]] static double gamma_star(std::size_t d, double mu_upper);

    [[nodiscard]] double gamma() const noexcept { return gamma_; }
    [[nodiscard]] std::size_t dim() const noexcept { return d_; }
    [[nodiscard]] double radius(std::size_t n) const noexcept;

private:
    double gamma_;
    std::size_t d_;
};

[[nodiscard]] inline double connection_radius(std::size_t n, const RadiusSchedule& sched) {
    return sched.radius(n);
}

class Tree {
public:
    static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

    explicit Tree(const Config& root);

    [[nodiscard]] std::size_t size() const noexcept { return configs_.size(); }
    [[nodiscard]] const Config& config(std::size_t i) const { return configs_[i]; }
    [[nodiscard]] const std::vector<Config>& configs() const noexcept { return configs_; }
    [[nodiscard]] std::size_t parent(std::size_t i) const { return parents_[i]; }
    [[nodiscard]] double cost(std::size_t i) const { return costs_[i]; }
    [[nodiscard]] const std::vector<std::size_t>& children(std::size_t i) const { return children_[i]; }
    [[nodiscard]] const NnIndex& index() const noexcept { return nn_; }

    /// Appends q under `parent`; cost = cost(parent) + distance. No validity checks.
    std::size_t add(const Config& q, std::size_t parent);
    /// Moves `node` under `new_parent` and recomputes the subtree's costs.
    void reparent(std::size_t node, std::size_t new_parent);

    /// Waypoints from the root to `node`.
    [[nodiscard]] Path path_from_root(std::size_t node) const;

    /// Single root, acyclic parents, consistent child lists, and
    /// cost(node) == cost(parent) + distance within tol.
    [[nodiscard]] bool invariants_hold(double tol = 1e-9) const;

private:
    std::vector<Config> configs_;
    std::vector<std::size_t> parents_;
    std::vector<double> costs_;
    std::vector<std::vector<std::size_t>> children_;
    NnIndex nn_;
};

struct Extension {
    std::size_t node;
    std::size_t parent;
};

/// Steer from the nearest node toward q_rand, choose the cheapest valid parent
/// among the eps_n-ball (falling back to the nearest node), then rewire.
/// Returns nullopt when the extension is blocked.
std::optional<Extension> extend_rewire(Tree& tree, const Config& q_rand, const CollisionChecker& checker,
                                       const RadiusSchedule& sched, double step);

/// Adds q, already known to be reachable from `via` by a valid motion, with
/// choose-parent and rewire. Used when a tree absorbs an experience-graph vertex.
std::size_t insert_with_rewire(Tree& tree, const Config& q, std::size_t via, const CollisionChecker& checker,
                               const RadiusSchedule& sched);

/// Node of `other` nearest to tree.config(bridge) if the straight motion to it is valid.
[[nodiscard]] std::optional<std::size_t> bridge_to(const Tree& tree, std::size_t bridge, const Tree& other,
                                                   const CollisionChecker& checker);

/// Root-to-root path: a.root -> node_a, then node_b -> b.root.
[[nodiscard]] Path join_trees(const Tree& a, std::size_t node_a, const Tree& b, std::size_t node_b);

/// bridge_to followed by join_trees.
[[nodiscard]] std::optional<Path> try_connect_trees(const Tree& a, const Tree& b, std::size_t bridge,
                                                    const CollisionChecker& checker);

}  // namespace ltr
