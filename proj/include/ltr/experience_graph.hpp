// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors
//
// Persistent lazy experience graph. Edges are created without collision
// checks and validated only when a shortest-path candidate uses them; a
// validity tag is trusted only during the epoch (planning call) it was made.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ltr/checker.hpp"
#include "ltr/config.hpp"
#include "ltr/nn_index.hpp"

namespace ltr {

enum class EdgeStatus : std::uint8_t { unknown, valid, invalid };

struct EdgeState {
    EdgeStatus status{EdgeStatus::unknown};
    std::uint64_t epoch{0};

    [[nodiscard]] static EdgeState unknown() noexcept { return {}; }
    [[nodiscard]] static EdgeState valid_at(std::uint64_t e) noexcept { return {EdgeStatus::valid, e}; }
    [[nodiscard]] static EdgeState invalid_at(std::uint64_t e) noexcept { return {EdgeStatus::invalid, e}; }

    /// Status as seen during epoch `current`; stale tags read as unknown.
    [[nodiscard]] EdgeStatus at(std::uint64_t current) const noexcept {
        return epoch == current ? status : EdgeStatus::unknown;
    }
    friend bool operator==(const EdgeState&, const EdgeState&) = default;
};

struct GraphEdge {
    std::size_t u{0};
    std::size_t v{0};
    double weight{0};
    EdgeState state;
};

struct GraphPath {
    std::vector<std::size_t> vertices;
    double cost{0};
};

/// A seed for multi-source/multi-target search: vertex plus an additive cost.
struct Terminal {
    std::size_t vertex;
    double offset;
};

class ExperienceGraph {
public:
    explicit ExperienceGraph(std::size_t dim, std::uint64_t epoch = 0) : dim_(dim), epoch_(epoch), nn_(dim) {}

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t vertex_count() const noexcept { return vertices_.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
    [[nodiscard]] bool empty() const noexcept { return vertices_.empty(); }
    [[nodiscard]] std::uint64_t epoch() const noexcept { return epoch_; }
    [[nodiscard]] const Config& vertex(std::size_t id) const { return vertices_[id]; }
    [[nodiscard]] const GraphEdge& edge(std::size_t eid) const { return edges_[eid]; }
    [[nodiscard]] const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
    [[nodiscard]] const std::vector<std::size_t>& incident(std::size_t v) const { return adjacency_[v]; }
    [[nodiscard]] const NnIndex& index() const noexcept { return nn_; }
    [[nodiscard]] std::optional<std::size_t> find_edge(std::size_t u, std::size_t v) const;

    /// Adds an isolated vertex.
    std::size_t add_vertex(const Config& q);

    /// Adds v_new with an unknown-state edge to every vertex within eps (no
    /// collision checks). `validated_neighbor`, when given, is the vertex at
    /// the other end of a motion the caller just checked; that edge is
    /// created (regardless of eps) as valid in the current epoch.
    std::size_t add_vertex_lazy(const Config& v_new, double eps,
                                std::optional<std::size_t> validated_neighbor = std::nullopt);

    /// Inserts or merges an edge. A duplicate keeps the more informative
    /// state: current-epoch tag > stale tag (newer first) > unknown.
    std::size_t add_edge(std::size_t u, std::size_t v, EdgeState state);

    /// Starts a new epoch; all existing tags become untrusted, nothing is deleted.
    void begin_epoch() noexcept { ++epoch_; }

    /// Lazy shortest path: repeatedly takes the weight-minimal path over
    /// edges not known invalid this epoch and validates its unknown edges in
    /// order, tagging them. Returns the first fully valid path, or nullopt.
    /// Tags persist in the graph. `checked`, if given, receives the id of
    /// every edge motion-checked by this call.
    std::optional<GraphPath> lazy_shortest_path(std::size_t src, std::size_t dst, const CollisionChecker& checker,
                                                std::vector<std::size_t>* checked = nullptr);

    /// Same as above between vertex sets; path cost excludes the offsets,
    /// while the minimised objective includes them.
    std::optional<GraphPath> lazy_shortest_path(std::span<const Terminal> sources, std::span<const Terminal> targets,
                                                const CollisionChecker& checker,
                                                std::vector<std::size_t>* checked = nullptr);

    /// Inserts every vertex and edge of g_prime (states preserved), then links
    /// each inserted vertex to pre-existing vertices within eps with unknown
    /// edges. Returns the new id of each g_prime vertex.
    std::vector<std::size_t> merge(const ExperienceGraph& g_prime, double eps);

    [[nodiscard]] Path to_path(const GraphPath& gp) const;

    /// Edge-list dump: header, one `v` line per vertex, one `e` line per edge.
    void export_text(std::ostream& out) const;

private:
    [[nodiscard]] int rank(const EdgeState& s) const noexcept;

    std::size_t dim_;
    std::uint64_t epoch_;
    std::vector<Config> vertices_;
    std::vector<GraphEdge> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::unordered_map<std::uint64_t, std::size_t> edge_lookup_;
    NnIndex nn_;
};

}  // namespace ltr
