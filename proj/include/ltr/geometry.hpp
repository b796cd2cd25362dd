// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors
//
// Planar collision primitives: discs, convex polygons and segments.
// All predicates treat shapes as closed sets, so touching counts as contact.

#pragma once

#include <cmath>
#include <variant>
#include <vector>

namespace ltr::geom {

struct Vec2 {
    double x{0};
    double y{0};

    friend Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) noexcept { return {s * a.x, s * a.y}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

[[nodiscard]] inline double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
[[nodiscard]] inline double cross(Vec2 a, Vec2 b) noexcept { return a.x * b.y - a.y * b.x; }
[[nodiscard]] inline double norm(Vec2 a) noexcept { return std::hypot(a.x, a.y); }

/// SE(2) pose.
struct Pose {
    double x{0};
    double y{0};
    double theta{0};

    [[nodiscard]] Vec2 position() const noexcept { return {x, y}; }
    [[nodiscard]] Vec2 apply(Vec2 local) const noexcept {
        const double c = std::cos(theta), s = std::sin(theta);
        return {x + c * local.x - s * local.y, y + s * local.x + c * local.y};
    }
    friend bool operator==(const Pose&, const Pose&) = default;
};

struct Disc {
    double radius{0};
    friend bool operator==(const Disc&, const Disc&) = default;
};

/// Convex polygon given in its local frame, counter-clockwise after validation.
struct Polygon {
    std::vector<Vec2> vertices;
    friend bool operator==(const Polygon&, const Polygon&) = default;
};

using Shape = std::variant<Disc, Polygon>;

/// A shape instantiated in the world frame.
struct PlacedShape {
    enum class Kind { disc, polygon } kind{Kind::disc};
    Vec2 center;                // disc centre
    double radius{0};           // disc radius
    std::vector<Vec2> vertices; // polygon vertices, CCW, world frame
    Vec2 box_min, box_max;      // axis-aligned bounding box
};

[[nodiscard]] PlacedShape place(const Shape& shape, const Pose& pose);

/// Throws ContractViolation for non-positive radii, fewer than 3 vertices,
/// collinear or non-convex vertex lists. Clockwise input is reordered CCW.
void normalize(Shape& shape);

[[nodiscard]] double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) noexcept;
[[nodiscard]] bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) noexcept;
[[nodiscard]] bool point_in_polygon(Vec2 p, const std::vector<Vec2>& ccw) noexcept;

[[nodiscard]] bool point_hits(Vec2 p, const PlacedShape& s) noexcept;
[[nodiscard]] bool segment_hits(Vec2 a, Vec2 b, const PlacedShape& s) noexcept;
[[nodiscard]] bool disc_hits(Vec2 c, double r, const PlacedShape& s) noexcept;
/// Shape-shape test; polygon pairs use the separating axis theorem.
[[nodiscard]] bool shapes_intersect(const PlacedShape& a, const PlacedShape& b) noexcept;

/// True iff the whole shape lies inside the closed rectangle.
[[nodiscard]] bool inside_rect(const PlacedShape& s, Vec2 lo, Vec2 hi) noexcept;

}  // namespace ltr::geom
