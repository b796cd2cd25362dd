// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors

#include "ltr/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ltr/errors.hpp"

namespace ltr {

RadiusSchedule::RadiusSchedule(double gamma, std::size_t d, double mu_upper) : gamma_(gamma), d_(d) {
    require(d >= 1, "radius schedule: dimension must be positive");
    require(mu_upper > 0.0, "radius schedule: free-space measure bound must be positive");
    require(gamma > gamma_star(d, mu_upper), "radius schedule: gamma must exceed gamma*");
}

RadiusSchedule RadiusSchedule::with_default_gamma(std::size_t d, double mu_upper) {
    return RadiusSchedule(1.1 * gamma_star(d, mu_upper), d, mu_upper);
}

double RadiusSchedule::unit_ball_volume(std::size_t d) {
    const double h = static_cast<double>(d) / 2.0;
    return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

double RadiusSchedule::gamma_star(std::size_t d, double mu_upper) {
    const double inv_d = 1.0 / static_cast<double>(d);
    return 2.0 * std::pow(1.0 + inv_d, inv_d) * std::pow(mu_upper / unit_ball_volume(d), inv_d);
}

double RadiusSchedule::radius(std::size_t n) const noexcept {
    const double m = static_cast<double>(std::max<std::size_t>(n, 2));
    return gamma_ * std::pow(std::log(m) / m, 1.0 / static_cast<double>(d_));
}

Tree::Tree(const Config& root) : nn_(root.dim()) {
    configs_.push_back(root);
    parents_.push_back(kNoParent);
    costs_.push_back(0.0);
    children_.emplace_back();
    nn_.insert(root, 0);
}

std::size_t Tree::add(const Config& q, std::size_t parent) {
    require(parent < size(), "tree: parent out of range");
    const std::size_t id = size();
    configs_.push_back(q);
    parents_.push_back(parent);
    costs_.push_back(costs_[parent] + distance(configs_[parent], q));
    children_.emplace_back();
    children_[parent].push_back(id);
    nn_.insert(q, id);
    return id;
}

void Tree::reparent(std::size_t node, std::size_t new_parent) {
    require(node != 0 && node < size() && new_parent < size(), "tree: reparent out of range");
    auto& siblings = children_[parents_[node]];
    siblings.erase(std::find(siblings.begin(), siblings.end(), node));
    parents_[node] = new_parent;
    children_[new_parent].push_back(node);
    std::vector<std::size_t> stack{node};
    while (!stack.empty()) {
        const std::size_t n = stack.back();
        stack.pop_back();
        costs_[n] = costs_[parents_[n]] + distance(configs_[parents_[n]], configs_[n]);
        stack.insert(stack.end(), children_[n].begin(), children_[n].end());
    }
}

Path Tree::path_from_root(std::size_t node) const {
    Path p;
    for (std::size_t n = node; n != kNoParent; n = parents_[n]) {
        p.waypoints.push_back(configs_[n]);
    }
    std::reverse(p.waypoints.begin(), p.waypoints.end());
    return p;
}

bool Tree::invariants_hold(double tol) const {
    if (parents_[0] != kNoParent || costs_[0] != 0.0) {
        return false;
    }
    for (std::size_t i = 1; i < size(); ++i) {
        const std::size_t p = parents_[i];
        if (p == kNoParent || p >= size()) {
            return false;
        }
        if (std::abs(costs_[i] - (costs_[p] + distance(configs_[p], configs_[i]))) > tol) {
            return false;
        }
        const auto& ch = children_[p];
        if (std::find(ch.begin(), ch.end(), i) == ch.end()) {
            return false;
        }
        // Walking up must reach the root within size() steps.
        std::size_t steps = 0;
        for (std::size_t n = i; n != 0; n = parents_[n]) {
            if (++steps > size()) {
                return false;
            }
        }
    }
    return true;
}

namespace {

// Candidate parents ordered by the cost they would give q, ties by id.
std::vector<std::pair<double, std::size_t>> rank_parents(const Tree& tree, const Config& q,
                                                         const std::vector<Neighbor>& near, std::size_t extra) {
    std::vector<std::pair<double, std::size_t>> ranked;
    ranked.reserve(near.size() + 1);
    bool have_extra = false;
    for (const auto& nb : near) {
        ranked.emplace_back(tree.cost(nb.id) + nb.distance, nb.id);
        have_extra = have_extra || nb.id == extra;
    }
    if (!have_extra) {
        ranked.emplace_back(tree.cost(extra) + distance(tree.config(extra), q), extra);
    }
    std::sort(ranked.begin(), ranked.end());
    return ranked;
}

void rewire(Tree& tree, std::size_t node, const std::vector<Neighbor>& near, const CollisionChecker& checker) {
    const std::size_t parent = tree.parent(node);
    for (const auto& nb : near) {
        if (nb.id == parent || nb.id == node || nb.id == 0) {
            continue;
        }
        const double via = tree.cost(node) + nb.distance;
        if (via + 1e-12 < tree.cost(nb.id) && checker.motion_valid(tree.config(node), tree.config(nb.id))) {
            tree.reparent(nb.id, node);
        }
    }
}

}  // namespace

std::optional<Extension> extend_rewire(Tree& tree, const Config& q_rand, const CollisionChecker& checker,
                                       const RadiusSchedule& sched, double step) {
    const Neighbor nearest = tree.index().nearest(q_rand);
    Config q_new = steer(tree.config(nearest.id), q_rand, step);
    if (!checker.config_valid(q_new)) {
        return std::nullopt;
    }
    const auto near = tree.index().within_radius(q_new, sched.radius(tree.size()));
    std::optional<std::size_t> parent;
    for (const auto& [c, id] : rank_parents(tree, q_new, near, nearest.id)) {
        if (checker.motion_valid(tree.config(id), q_new)) {
            parent = id;
            break;
        }
    }
    if (!parent) {
        return std::nullopt;
    }
    const std::size_t node = tree.add(q_new, *parent);
    rewire(tree, node, near, checker);
    return Extension{node, *parent};
}

std::size_t insert_with_rewire(Tree& tree, const Config& q, std::size_t via, const CollisionChecker& checker,
                               const RadiusSchedule& sched) {
    const auto near = tree.index().within_radius(q, sched.radius(tree.size()));
    std::size_t parent = via;
    for (const auto& [c, id] : rank_parents(tree, q, near, via)) {
        if (id == via || checker.motion_valid(tree.config(id), q)) {
            parent = id;
            break;
        }
    }
    const std::size_t node = tree.add(q, parent);
    rewire(tree, node, near, checker);
    return node;
}

std::optional<std::size_t> bridge_to(const Tree& tree, std::size_t bridge, const Tree& other,
                                     const CollisionChecker& checker) {
    const Config& q = tree.config(bridge);
    const Neighbor nb = other.index().nearest(q);
    if (!checker.motion_valid(q, other.config(nb.id))) {
        return std::nullopt;
    }
    return nb.id;
}

Path join_trees(const Tree& a, std::size_t node_a, const Tree& b, std::size_t node_b) {
    Path p = a.path_from_root(node_a);
    Path tail = b.path_from_root(node_b);
    std::reverse(tail.waypoints.begin(), tail.waypoints.end());
    auto first = tail.waypoints.begin();
    if (!p.waypoints.empty() && p.waypoints.back() == *first && p.waypoints.size() + tail.waypoints.size() > 2) {
        ++first;
    }
    p.waypoints.insert(p.waypoints.end(), first, tail.waypoints.end());
    return p;
}

std::optional<Path> try_connect_trees(const Tree& a, const Tree& b, std::size_t bridge,
                                      const CollisionChecker& checker) {
    const auto target = bridge_to(a, bridge, b, checker);
    if (!target) {
        return std::nullopt;
    }
    return join_trees(a, bridge, b, *target);
}

}  // namespace ltr
