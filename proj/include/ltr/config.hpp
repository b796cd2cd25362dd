// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors
//
// Configurations, the Euclidean metric, straight-line steering and
// resolution-based motion checking shared by every planner.

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ltr {

/// A point in R^d. Translational dims in metres, revolute dims in radians.
class Config {
public:
    Config() = default;
    explicit Config(std::size_t dim, double fill = 0.0) : coords_(dim, fill) {}
    explicit Config(std::vector<double> coords) : coords_(std::move(coords)) {}
    Config(std::initializer_list<double> coords) : coords_(coords) {}

    [[nodiscard]] std::size_t dim() const noexcept { return coords_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return coords_[i]; }
    [[nodiscard]] double& operator[](std::size_t i) { return coords_[i]; }
    [[nodiscard]] std::span<const double> view() const noexcept { return coords_; }
    [[nodiscard]] const std::vector<double>& coords() const noexcept { return coords_; }

    friend bool operator==(const Config&, const Config&) = default;
    friend auto operator<=>(const Config&, const Config&) = default;

private:
    std::vector<double> coords_;
};

/// Axis-aligned box bounding the configuration space.
struct SpaceBounds {
    std::vector<double> lower;
    std::vector<double> upper;

    /// Throws ContractViolation unless sizes agree, d >= 2 and lower <= upper.
    /// Degenerate (lower == upper) dims are allowed for sampling tests.
    void validate() const;
    [[nodiscard]] std::size_t dim() const noexcept { return lower.size(); }
    [[nodiscard]] bool contains(const Config& q) const;
    /// Product of side lengths; the upper bound used for mu(C_free).
    [[nodiscard]] double volume() const;
};

/// Piecewise-linear trajectory; waypoints.front() is sigma(0), back() is sigma(1).
struct Path {
    std::vector<Config> waypoints;

    friend bool operator==(const Path&, const Path&) = default;
};

/// Euclidean distance. Kept as the single metric kernel so every index
/// and oracle compares bit-identical values.
[[nodiscard]] double distance(std::span<const double> a, std::span<const double> b) noexcept;
[[nodiscard]] double distance(const Config& a, const Config& b);

[[nodiscard]] Config interpolate(const Config& a, const Config& b, double t);
/// Writes a + t (b - a) into out without reallocating.
void interpolate_into(const Config& a, const Config& b, double t, Config& out) noexcept;

/// Returns `to` when within max_step, else the point max_step along [from, to].
[[nodiscard]] Config steer(const Config& from, const Config& to, double max_step);

/// Sum of consecutive waypoint distances.
[[nodiscard]] double path_cost(const Path& p);

/// Number of states motion_valid inspects: ceil(distance / resolution) + 1.
[[nodiscard]] std::size_t motion_check_count(double dist, double resolution);

/// Discretised straight-line check; `valid` is called on each state.
/// The segment is walked from the lexicographically smaller endpoint so the
/// inspected state set is identical for (a, b) and (b, a).
template <class Predicate>
[[nodiscard]] bool motion_valid(const Config& a, const Config& b, double resolution, Predicate&& valid) {
    const Config& lo = (b < a) ? b : a;
    const Config& hi = (b < a) ? a : b;
    const std::size_t n = motion_check_count(distance(lo, hi), resolution) - 1;
    if (n == 0) {
        return valid(lo);
    }
    Config q(lo.dim());
    for (std::size_t i = 0; i <= n; ++i) {
        interpolate_into(lo, hi, static_cast<double>(i) / static_cast<double>(n), q);
        if (!valid(q)) {
            return false;
        }
    }
    return true;
}

}  // namespace ltr
