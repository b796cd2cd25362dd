// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors

#include "ltr/geometry.hpp"

#include <algorithm>
#include <limits>

#include "ltr/errors.hpp"

namespace ltr::geom {

namespace {

bool boxes_overlap(const PlacedShape& a, const PlacedShape& b) noexcept {
    return a.box_min.x <= b.box_max.x && b.box_min.x <= a.box_max.x &&
           a.box_min.y <= b.box_max.y && b.box_min.y <= a.box_max.y;
}

double point_polygon_distance(Vec2 p, const std::vector<Vec2>& v) noexcept {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        best = std::min(best, point_segment_distance(p, v[i], v[(i + 1) % v.size()]));
    }
    return best;
}

// Projection interval of a CCW polygon onto axis.
std::pair<double, double> project(const std::vector<Vec2>& v, Vec2 axis) noexcept {
    double lo = dot(v[0], axis), hi = lo;
    for (std::size_t i = 1; i < v.size(); ++i) {
        const double p = dot(v[i], axis);
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    return {lo, hi};
}

bool has_separating_edge(const std::vector<Vec2>& a, const std::vector<Vec2>& b) noexcept {
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Vec2 e = a[(i + 1) % a.size()] - a[i];
        const Vec2 axis{e.y, -e.x};
        const auto [alo, ahi] = project(a, axis);
        const auto [blo, bhi] = project(b, axis);
        if (ahi < blo || bhi < alo) {
            return true;
        }
    }
    return false;
}

}  // namespace

void normalize(Shape& shape) {
    if (auto* d = std::get_if<Disc>(&shape)) {
        require(d->radius > 0.0 && std::isfinite(d->radius), "disc radius must be positive");
        return;
    }
    auto& v = std::get<Polygon>(shape).vertices;
    require(v.size() >= 3, "polygon needs at least 3 vertices");
    double area2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        area2 += cross(v[i], v[(i + 1) % v.size()]);
    }
    require(std::abs(area2) > 1e-12, "polygon vertices are collinear");
    if (area2 < 0.0) {
        std::reverse(v.begin(), v.end());
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 e0 = v[(i + 1) % v.size()] - v[i];
        const Vec2 e1 = v[(i + 2) % v.size()] - v[(i + 1) % v.size()];
        require(cross(e0, e1) >= 0.0, "polygon must be convex");
    }
}

PlacedShape place(const Shape& shape, const Pose& pose) {
    PlacedShape out;
    if (const auto* d = std::get_if<Disc>(&shape)) {
        out.kind = PlacedShape::Kind::disc;
        out.center = pose.position();
        out.radius = d->radius;
        out.box_min = {out.center.x - d->radius, out.center.y - d->radius};
        out.box_max = {out.center.x + d->radius, out.center.y + d->radius};
        return out;
    }
    out.kind = PlacedShape::Kind::polygon;
    const auto& local = std::get<Polygon>(shape).vertices;
    out.vertices.reserve(local.size());
    out.box_min = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    out.box_max = {-out.box_min.x, -out.box_min.y};
    for (const Vec2& p : local) {
        const Vec2 w = pose.apply(p);
        out.vertices.push_back(w);
        out.box_min = {std::min(out.box_min.x, w.x), std::min(out.box_min.y, w.y)};
        out.box_max = {std::max(out.box_max.x, w.x), std::max(out.box_max.y, w.y)};
    }
    out.center = pose.position();
    return out;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) noexcept {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) {
        return norm(p - a);
    }
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return norm(p - (a + t * ab));
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) noexcept {
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return true;
    }
    auto on_segment = [](Vec2 p, Vec2 q, Vec2 r) {
        return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
               std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
    };
    return (d1 == 0 && on_segment(a, b, c)) || (d2 == 0 && on_segment(a, b, d)) ||
           (d3 == 0 && on_segment(c, d, a)) || (d4 == 0 && on_segment(c, d, b));
}

bool point_in_polygon(Vec2 p, const std::vector<Vec2>& ccw) noexcept {
    for (std::size_t i = 0; i < ccw.size(); ++i) {
        if (cross(ccw[(i + 1) % ccw.size()] - ccw[i], p - ccw[i]) < 0.0) {
            return false;
        }
    }
    return true;
}

bool point_hits(Vec2 p, const PlacedShape& s) noexcept {
    if (s.kind == PlacedShape::Kind::disc) {
        return norm(p - s.center) <= s.radius;
    }
    return point_in_polygon(p, s.vertices);
}

bool segment_hits(Vec2 a, Vec2 b, const PlacedShape& s) noexcept {
    if (std::max(a.x, b.x) < s.box_min.x || std::min(a.x, b.x) > s.box_max.x ||
        std::max(a.y, b.y) < s.box_min.y || std::min(a.y, b.y) > s.box_max.y) {
        return false;
    }
    if (s.kind == PlacedShape::Kind::disc) {
        return point_segment_distance(s.center, a, b) <= s.radius;
    }
    if (point_in_polygon(a, s.vertices)) {
        return true;
    }
    const auto& v = s.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (segments_intersect(a, b, v[i], v[(i + 1) % v.size()])) {
            return true;
        }
    }
    return false;
}

bool disc_hits(Vec2 c, double r, const PlacedShape& s) noexcept {
    if (c.x + r < s.box_min.x || c.x - r > s.box_max.x || c.y + r < s.box_min.y || c.y - r > s.box_max.y) {
        return false;
    }
    if (s.kind == PlacedShape::Kind::disc) {
        return norm(c - s.center) <= r + s.radius;
    }
    return point_in_polygon(c, s.vertices) || point_polygon_distance(c, s.vertices) <= r;
}

bool shapes_intersect(const PlacedShape& a, const PlacedShape& b) noexcept {
    if (!boxes_overlap(a, b)) {
        return false;
    }
    if (a.kind == PlacedShape::Kind::disc) {
        return disc_hits(a.center, a.radius, b);
    }
    if (b.kind == PlacedShape::Kind::disc) {
        return disc_hits(b.center, b.radius, a);
    }
    return !has_separating_edge(a.vertices, b.vertices) && !has_separating_edge(b.vertices, a.vertices);
}

bool inside_rect(const PlacedShape& s, Vec2 lo, Vec2 hi) noexcept {
    return s.box_min.x >= lo.x && s.box_min.y >= lo.y && s.box_max.x <= hi.x && s.box_max.y <= hi.y;
}

}  // namespace ltr::geom
