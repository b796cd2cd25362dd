// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors

#include "ltr/experience_graph.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <ostream>
#include <queue>
#include <tuple>

#include "ltr/errors.hpp"

namespace ltr {

namespace {

std::uint64_t edge_key(std::size_t u, std::size_t v) noexcept {
    if (u > v) {
        std::swap(u, v);
    }
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
}

const char* status_name(EdgeStatus s) {
    switch (s) {
    case EdgeStatus::valid:
        return "valid";
    case EdgeStatus::invalid:
        return "invalid";
    default:
        return "unknown";
    }
}

}  // namespace

std::optional<std::size_t> ExperienceGraph::find_edge(std::size_t u, std::size_t v) const {
    const auto it = edge_lookup_.find(edge_key(u, v));
    if (it == edge_lookup_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t ExperienceGraph::add_vertex(const Config& q) {
    require(q.dim() == dim_, "experience graph: dimension mismatch");
    const std::size_t id = vertices_.size();
    vertices_.push_back(q);
    adjacency_.emplace_back();
    nn_.insert(q, id);
    return id;
}

std::size_t ExperienceGraph::add_vertex_lazy(const Config& v_new, double eps,
                                             std::optional<std::size_t> validated_neighbor) {
    require(eps > 0.0, "add_vertex_lazy: eps must be positive");
    require(!validated_neighbor || *validated_neighbor < vertex_count(), "add_vertex_lazy: unknown neighbour");
    const auto near = empty() ? std::vector<Neighbor>{} : nn_.within_radius(v_new, eps);
    const std::size_t id = add_vertex(v_new);
    for (const auto& nb : near) {
        add_edge(id, nb.id, EdgeState::unknown());
    }
    if (validated_neighbor) {
        add_edge(id, *validated_neighbor, EdgeState::valid_at(epoch_));
    }
    return id;
}

int ExperienceGraph::rank(const EdgeState& s) const noexcept {
    if (s.status == EdgeStatus::unknown) {
        return 0;
    }
    return s.epoch == epoch_ ? 2 : 1;
}

std::size_t ExperienceGraph::add_edge(std::size_t u, std::size_t v, EdgeState state) {
    require(u != v, "experience graph: self-loop");
    require(u < vertex_count() && v < vertex_count(), "experience graph: edge endpoint out of range");
    const auto key = edge_key(u, v);
    if (const auto it = edge_lookup_.find(key); it != edge_lookup_.end()) {
        EdgeState& cur = edges_[it->second].state;
        const int rn = rank(state), rc = rank(cur);
        if (rn > rc || (rn == rc && rn == 1 && state.epoch > cur.epoch)) {
            cur = state;
        }
        return it->second;
    }
    const std::size_t eid = edges_.size();
    edges_.push_back({u, v, distance(vertices_[u], vertices_[v]), state});
    adjacency_[u].push_back(eid);
    adjacency_[v].push_back(eid);
    edge_lookup_.emplace(key, eid);
    return eid;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

/// Multi-source shortest-path tree over the edges not known invalid in the
/// current epoch. Invalidating edges only lengthens paths, so after a cut
/// only the subtrees hanging below the cut edges need to be recomputed.
class SearchTree {
public:
    SearchTree(const ExperienceGraph& g, std::span<const Terminal> sources)
        : g_(g), sources_(sources), dist_(g.vertex_count(), kInf), via_(g.vertex_count(), kNone) {
        for (const auto& s : sources_) {
            seed(s);
        }
        settle();
    }

    /// Target minimising distance + offset (smallest id on ties), if reachable.
    [[nodiscard]] std::optional<std::size_t> best_target(std::span<const Terminal> targets) const {
        double best = kInf;
        std::size_t arg = kNone;
        for (const auto& t : targets) {
            const double v = dist_[t.vertex] + t.offset;
            if (v < best || (v == best && v < kInf && t.vertex < arg)) {
                best = v;
                arg = t.vertex;
            }
        }
        return arg == kNone ? std::nullopt : std::optional<std::size_t>(arg);
    }

    [[nodiscard]] GraphPath path_to(std::size_t v) const {
        GraphPath gp;
        for (std::size_t u = v; u != kNone;) {
            gp.vertices.push_back(u);
            const std::size_t e = via_[u];
            u = e == kNone ? kNone : other(e, u);
        }
        std::reverse(gp.vertices.begin(), gp.vertices.end());
        return gp;
    }

    /// Recomputes distances after `cut` edges became invalid.
    void repair(std::span<const std::size_t> cut) {
        const std::size_t n = dist_.size();
        std::vector<char> affected(n, 0);
        std::vector<std::size_t> stack, touched;
        for (const std::size_t e : cut) {
            const GraphEdge& edge = g_.edge(e);
            for (const std::size_t v : {edge.u, edge.v}) {
                if (via_[v] == e && !affected[v]) {
                    affected[v] = 1;
                    stack.push_back(v);
                }
            }
        }
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            touched.push_back(v);
            for (const std::size_t eid : g_.incident(v)) {
                const std::size_t w = other(eid, v);
                if (via_[w] == eid && !affected[w]) {
                    affected[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        for (const std::size_t v : touched) {
            dist_[v] = kInf;
            via_[v] = kNone;
        }
        for (const auto& s : sources_) {
            if (affected[s.vertex]) {
                seed(s);
            }
        }
        for (const std::size_t v : touched) {
            for (const std::size_t eid : g_.incident(v)) {
                const GraphEdge& e = g_.edge(eid);
                const std::size_t u = other(eid, v);
                if (affected[u] || dist_[u] == kInf || e.state.at(g_.epoch()) == EdgeStatus::invalid) {
                    continue;
                }
                relax(eid, u, v);
            }
        }
        settle();
    }

private:
    using Item = std::pair<double, std::size_t>;

    [[nodiscard]] std::size_t other(std::size_t eid, std::size_t v) const {
        const GraphEdge& e = g_.edge(eid);
        return e.u == v ? e.v : e.u;
    }

    void seed(const Terminal& s) {
        if (s.offset < dist_[s.vertex]) {
            dist_[s.vertex] = s.offset;
            via_[s.vertex] = kNone;
            open_.emplace(s.offset, s.vertex);
        }
    }

    void relax(std::size_t eid, std::size_t from, std::size_t to) {
        const double nd = dist_[from] + g_.edge(eid).weight;
        if (nd < dist_[to]) {
            dist_[to] = nd;
            via_[to] = eid;
            open_.emplace(nd, to);
        }
    }

    void settle() {
        while (!open_.empty()) {
            const auto [d, u] = open_.top();
            open_.pop();
            if (d > dist_[u]) {
                continue;
            }
            for (const std::size_t eid : g_.incident(u)) {
                if (g_.edge(eid).state.at(g_.epoch()) == EdgeStatus::invalid) {
                    continue;
                }
                relax(eid, u, other(eid, u));
            }
        }
    }

    const ExperienceGraph& g_;
    std::span<const Terminal> sources_;
    std::vector<double> dist_;
    std::vector<std::size_t> via_;  // tree edge into each vertex
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open_;
};

}  // namespace

std::optional<GraphPath> ExperienceGraph::lazy_shortest_path(std::size_t src, std::size_t dst,
                                                             const CollisionChecker& checker,
                                                             std::vector<std::size_t>* checked) {
    require(src < vertex_count() && dst < vertex_count(), "lazy_shortest_path: unknown vertex");
    const Terminal s{src, 0.0}, t{dst, 0.0};
    return lazy_shortest_path(std::span(&s, 1), std::span(&t, 1), checker, checked);
}

std::optional<GraphPath> ExperienceGraph::lazy_shortest_path(std::span<const Terminal> sources,
                                                             std::span<const Terminal> targets,
                                                             const CollisionChecker& checker,
                                                             std::vector<std::size_t>* checked) {
    for (const auto& t : sources) {
        require(t.vertex < vertex_count(), "lazy_shortest_path: unknown source");
    }
    for (const auto& t : targets) {
        require(t.vertex < vertex_count(), "lazy_shortest_path: unknown target");
    }
    // Each failed round tags at least one more edge invalid, so this ends
    // after at most edge_count() + 1 rounds.
    SearchTree tree(*this, sources);
    while (true) {
        const auto end = tree.best_target(targets);
        if (!end) {
            return std::nullopt;
        }
        GraphPath candidate = tree.path_to(*end);
        std::vector<std::size_t> cut;
        for (std::size_t i = 1; i < candidate.vertices.size(); ++i) {
            const std::size_t eid = *find_edge(candidate.vertices[i - 1], candidate.vertices[i]);
            GraphEdge& e = edges_[eid];
            candidate.cost += e.weight;
            if (e.state.at(epoch_) == EdgeStatus::valid) {
                continue;
            }
            if (checked) {
                checked->push_back(eid);
            }
            const bool ok = checker.motion_valid(vertices_[e.u], vertices_[e.v]);
            e.state = ok ? EdgeState::valid_at(epoch_) : EdgeState::invalid_at(epoch_);
            if (!ok) {
                cut.push_back(eid);
            }
        }
        if (cut.empty()) {
            return candidate;
        }
        tree.repair(cut);
    }
}

std::vector<std::size_t> ExperienceGraph::merge(const ExperienceGraph& g_prime, double eps) {
    require(g_prime.dim() == dim_, "merge: dimension mismatch");
    require(eps > 0.0, "merge: eps must be positive");
    const std::size_t existing = vertex_count();
    std::vector<std::size_t> remap;
    remap.reserve(g_prime.vertex_count());
    for (std::size_t i = 0; i < g_prime.vertex_count(); ++i) {
        const Config& q = g_prime.vertex(i);
        const auto near = existing == 0 ? std::vector<Neighbor>{} : nn_.within_radius(q, eps);
        const std::size_t id = add_vertex(q);
        remap.push_back(id);
        for (const auto& nb : near) {
            if (nb.id < existing) {
                add_edge(id, nb.id, EdgeState::unknown());
            }
        }
    }
    for (const auto& e : g_prime.edges()) {
        add_edge(remap[e.u], remap[e.v], e.state);
    }
    return remap;
}

Path ExperienceGraph::to_path(const GraphPath& gp) const {
    Path p;
    for (const std::size_t v : gp.vertices) {
        p.waypoints.push_back(vertices_[v]);
    }
    return p;
}

void ExperienceGraph::export_text(std::ostream& out) const {
    const auto old_precision = out.precision();
    out << std::setprecision(17);
    out << "# ltr experience graph\n";
    out << "epoch " << epoch_ << "\n";
    out << "dimension " << dim_ << "\n";
    out << "vertices " << vertex_count() << "\n";
    for (std::size_t i = 0; i < vertex_count(); ++i) {
        out << "v " << i;
        for (const double c : vertices_[i].coords()) {
            out << ' ' << c;
        }
        out << '\n';
    }
    out << "edges " << edge_count() << "\n";
    for (const auto& e : edges_) {
        out << "e " << e.u << ' ' << e.v << ' ' << e.weight << ' ' << status_name(e.state.status) << ' '
            << e.state.epoch << '\n';
    }
    out.precision(old_precision);
}

}  // namespace ltr
