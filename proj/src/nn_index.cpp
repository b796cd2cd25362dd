// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors

#include "ltr/nn_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ltr/errors.hpp"

namespace ltr {

namespace {

// Pruning slack: planes are compared with a small relative margin so that
// points at exactly the query radius (or tied with the current best) are
// never skipped because of rounding in the plane distance.
inline double slack(double r) noexcept { return 1e-9 * (r + 1.0); }

}  // namespace

void NnIndex::insert(const Config& q, std::size_t id) {
    require(q.dim() == dim_, "nn_index: dimension mismatch");
    require(!ids_seen_.contains(id), "nn_index: duplicate id");
    ids_seen_.insert(id);
    spill_coords_.insert(spill_coords_.end(), q.coords().begin(), q.coords().end());
    spill_ids_.push_back(id);
    if (spill_ids_.size() >= kSpill) {
        flush_spill();
    }
}

void NnIndex::flush_spill() {
    Block merged;
    merged.coords = std::move(spill_coords_);
    merged.ids = std::move(spill_ids_);
    spill_coords_.clear();
    spill_ids_.clear();
    std::size_t level = 0;
    while (level < levels_.size() && !levels_[level].ids.empty()) {
        Block& b = levels_[level];
        merged.coords.insert(merged.coords.end(), b.coords.begin(), b.coords.end());
        merged.ids.insert(merged.ids.end(), b.ids.begin(), b.ids.end());
        b = Block{};
        ++level;
    }
    if (level == levels_.size()) {
        levels_.emplace_back();
    }
    merged.nodes.reserve(2 * merged.ids.size() / kLeaf + 1);
    build(merged, dim_, 0, merged.ids.size());
    levels_[level] = std::move(merged);
}

std::size_t NnIndex::build(Block& b, std::size_t dim, std::size_t lo, std::size_t hi) {
    const std::size_t self = b.nodes.size();
    b.nodes.push_back(Node{lo, hi});
    if (hi - lo <= kLeaf) {
        return self;
    }
    // Split on the axis of largest spread at the median.
    int axis = 0;
    double spread = -1.0;
    for (std::size_t a = 0; a < dim; ++a) {
        double mn = b.coords[lo * dim + a], mx = mn;
        for (std::size_t i = lo + 1; i < hi; ++i) {
            mn = std::min(mn, b.coords[i * dim + a]);
            mx = std::max(mx, b.coords[i * dim + a]);
        }
        if (mx - mn > spread) {
            spread = mx - mn;
            axis = static_cast<int>(a);
        }
    }
    std::vector<std::size_t> order(hi - lo);
    std::iota(order.begin(), order.end(), lo);
    const std::size_t mid = (hi - lo) / 2;
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(mid), order.end(),
                     [&](std::size_t x, std::size_t y) {
                         return b.coords[x * dim + axis] < b.coords[y * dim + axis];
                     });
    std::vector<double> coords(order.size() * dim);
    std::vector<std::size_t> ids(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::copy_n(b.coords.begin() + static_cast<std::ptrdiff_t>(order[i] * dim), dim,
                    coords.begin() + static_cast<std::ptrdiff_t>(i * dim));
        ids[i] = b.ids[order[i]];
    }
    std::copy(coords.begin(), coords.end(), b.coords.begin() + static_cast<std::ptrdiff_t>(lo * dim));
    std::copy(ids.begin(), ids.end(), b.ids.begin() + static_cast<std::ptrdiff_t>(lo));

    const std::size_t m = lo + mid;
    b.nodes[self].axis = axis;
    b.nodes[self].split = b.coords[m * dim + static_cast<std::size_t>(axis)];
    const std::size_t left = build(b, dim, lo, m);
    const std::size_t right = build(b, dim, m, hi);
    b.nodes[self].left = left;
    b.nodes[self].right = right;
    return self;
}

void NnIndex::nearest_in(const Block& b, std::size_t node, const double* q, Neighbor& best, bool& found) const {
    const Node& n = b.nodes[node];
    if (n.axis < 0) {
        for (std::size_t i = n.lo; i < n.hi; ++i) {
            const Neighbor cand{b.ids[i], distance({q, dim_}, {b.coords.data() + i * dim_, dim_})};
            if (!found || closer(cand, best)) {
                best = cand;
                found = true;
            }
        }
        return;
    }
    const double diff = q[n.axis] - n.split;
    const std::size_t near_side = diff < 0.0 ? n.left : n.right;
    const std::size_t far_side = diff < 0.0 ? n.right : n.left;
    nearest_in(b, near_side, q, best, found);
    if (!found || std::abs(diff) <= best.distance + slack(best.distance)) {
        nearest_in(b, far_side, q, best, found);
    }
}

void NnIndex::radius_in(const Block& b, std::size_t node, const double* q, double r,
                        std::vector<Neighbor>& out) const {
    const Node& n = b.nodes[node];
    if (n.axis < 0) {
        for (std::size_t i = n.lo; i < n.hi; ++i) {
            const double d = distance({q, dim_}, {b.coords.data() + i * dim_, dim_});
            if (d <= r) {
                out.push_back({b.ids[i], d});
            }
        }
        return;
    }
    const double diff = q[n.axis] - n.split;
    if (diff <= r + slack(r)) {
        radius_in(b, n.left, q, r, out);
    }
    if (-diff <= r + slack(r)) {
        radius_in(b, n.right, q, r, out);
    }
}

Neighbor NnIndex::nearest(const Config& q) const {
    require(q.dim() == dim_, "nn_index: dimension mismatch");
    if (empty()) {
        throw QueryError("nn_index: nearest on empty index");
    }
    Neighbor best;
    bool found = false;
    for (std::size_t i = 0; i < spill_ids_.size(); ++i) {
        const Neighbor cand{spill_ids_[i], distance(q.view(), {spill_coords_.data() + i * dim_, dim_})};
        if (!found || closer(cand, best)) {
            best = cand;
            found = true;
        }
    }
    for (const Block& b : levels_) {
        if (!b.ids.empty()) {
            nearest_in(b, 0, q.coords().data(), best, found);
        }
    }
    return best;
}

std::vector<Neighbor> NnIndex::within_radius(const Config& q, double r) const {
    require(q.dim() == dim_, "nn_index: dimension mismatch");
    require(r > 0.0, "nn_index: radius must be positive");
    std::vector<Neighbor> out;
    for (std::size_t i = 0; i < spill_ids_.size(); ++i) {
        const double d = distance(q.view(), {spill_coords_.data() + i * dim_, dim_});
        if (d <= r) {
            out.push_back({spill_ids_[i], d});
        }
    }
    for (const Block& b : levels_) {
        if (!b.ids.empty()) {
            radius_in(b, 0, q.coords().data(), r, out);
        }
    }
    std::sort(out.begin(), out.end(), closer);
    return out;
}

}  // namespace ltr
