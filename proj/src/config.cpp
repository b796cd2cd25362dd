// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors

#include "ltr/config.hpp"

#include <cmath>

#include "ltr/errors.hpp"
#include "ltr/rng.hpp"

namespace ltr {

void SpaceBounds::validate() const {
    require(lower.size() == upper.size(), "bounds: lower/upper size mismatch");
    require(lower.size() >= 2, "bounds: dimension must be >= 2");
    for (std::size_t i = 0; i < lower.size(); ++i) {
        require(std::isfinite(lower[i]) && std::isfinite(upper[i]), "bounds: non-finite limit");
        require(lower[i] <= upper[i], "bounds: lower > upper");
    }
}

bool SpaceBounds::contains(const Config& q) const {
    if (q.dim() != dim()) {
        return false;
    }
    for (std::size_t i = 0; i < q.dim(); ++i) {
        if (q[i] < lower[i] || q[i] > upper[i]) {
            return false;
        }
    }
    return true;
}

double SpaceBounds::volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < lower.size(); ++i) {
        v *= upper[i] - lower[i];
    }
    return v;
}

double distance(std::span<const double> a, std::span<const double> b) noexcept {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double distance(const Config& a, const Config& b) {
    require(a.dim() == b.dim(), "distance: dimension mismatch");
    return distance(a.view(), b.view());
}

Config interpolate(const Config& a, const Config& b, double t) {
    require(a.dim() == b.dim(), "interpolate: dimension mismatch");
    require(t >= 0.0 && t <= 1.0, "interpolate: t outside [0, 1]");
    Config out(a.dim());
    interpolate_into(a, b, t, out);
    return out;
}

void interpolate_into(const Config& a, const Config& b, double t, Config& out) noexcept {
    // Endpoints are reproduced exactly so t = 0 / t = 1 never drift.
    if (t == 0.0) {
        out = a;
        return;
    }
    if (t == 1.0) {
        out = b;
        return;
    }
    for (std::size_t i = 0; i < a.dim(); ++i) {
        out[i] = a[i] + t * (b[i] - a[i]);
    }
}

Config steer(const Config& from, const Config& to, double max_step) {
    require(max_step > 0.0, "steer: max_step must be positive");
    const double d = distance(from, to);
    if (d <= max_step) {
        return to;
    }
    Config out(from.dim());
    const double s = max_step / d;
    for (std::size_t i = 0; i < from.dim(); ++i) {
        out[i] = from[i] + s * (to[i] - from[i]);
    }
    return out;
}

double path_cost(const Path& p) {
    double c = 0.0;
    for (std::size_t i = 1; i < p.waypoints.size(); ++i) {
        c += distance(p.waypoints[i - 1], p.waypoints[i]);
    }
    return c;
}

std::size_t motion_check_count(double dist, double resolution) {
    require(resolution > 0.0, "motion_valid: resolution must be positive");
    return static_cast<std::size_t>(std::ceil(dist / resolution)) + 1;
}

Config sample_uniform(Rng& rng, const SpaceBounds& bounds) {
    Config q(bounds.dim());
    for (std::size_t i = 0; i < bounds.dim(); ++i) {
        q[i] = rng.uniform(bounds.lower[i], bounds.upper[i]);
    }
    return q;
}

}  // namespace ltr
