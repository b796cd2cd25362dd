// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors
//
// k-d tree index over configurations for nearest and radius queries.
//
// Insert-only. Points land in a small spill buffer; when it fills, it is
// merged with all full blocks below the first empty level into one static
// median-split tree (the logarithmic method), so every level k holds either
// nothing or exactly kSpill * 2^k points and each point is rebuilt O(log n)
// times in total.

#pragma once

#include <cstddef>
#include <unordered_set>
#include <vector>

#include "ltr/config.hpp"

namespace ltr {

struct Neighbor {
    std::size_t id{0};
    double distance{0};

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// (distance, id) lexicographic order; the tie rule for every query.
[[nodiscard]] inline bool closer(const Neighbor& a, const Neighbor& b) noexcept {
    return a.distance < b.distance || (a.distance == b.distance && a.id < b.id);
}

class NnIndex {
public:
    static constexpr std::size_t kSpill = 32;
    static constexpr std::size_t kLeaf = 8;

    explicit NnIndex(std::size_t dim) : dim_(dim) {}

    /// Throws ContractViolation on a duplicate id or dimension mismatch.
    void insert(const Config& q, std::size_t id);

    [[nodiscard]] std::size_t size() const noexcept { return ids_seen_.size(); }
    [[nodiscard]] bool empty() const noexcept { return ids_seen_.empty(); }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

    /// Closest stored point, ties to the smallest id. Throws QueryError when empty.
    [[nodiscard]] Neighbor nearest(const Config& q) const;

    /// All points with distance <= r, sorted by (distance, id).
    [[nodiscard]] std::vector<Neighbor> within_radius(const Config& q, double r) const;

private:
    struct Node {
        std::size_t lo{0}, hi{0};
        int axis{-1};  // -1 marks a leaf
        double split{0};
        std::size_t left{0}, right{0};
    };

    struct Block {
        std::vector<double> coords;  // row-major, reordered so leaves are contiguous
        std::vector<std::size_t> ids;
        std::vector<Node> nodes;     // nodes[0] is the root
    };

    void flush_spill();
    static std::size_t build(Block& b, std::size_t dim, std::size_t lo, std::size_t hi);
    void nearest_in(const Block& b, std::size_t node, const double* q, Neighbor& best, bool& found) const;
    void radius_in(const Block& b, std::size_t node, const double* q, double r, std::vector<Neighbor>& out) const;

    std::size_t dim_;
    std::vector<Block> levels_;       // empty Block == unoccupied level
    std::vector<double> spill_coords_;
    std::vector<std::size_t> spill_ids_;
    std::unordered_set<std::size_t> ids_seen_;
};

}  // namespace ltr
