// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors

#pragma once

#include <cstdint>
#include <random>

#include "ltr/config.hpp"

namespace ltr {

/// Seedable 64-bit generator (std::mt19937_64, bit-exact across platforms).
///
/// Sub-streams: `substream(k)` seeds a fresh engine from splitmix64(seed ^ k'),
/// where k' is k passed through the same mixer. Planners take one sub-stream
/// per tree so trees never share draws. Doubles are produced from the top 53
/// bits of each draw rather than through std::uniform_real_distribution,
/// whose output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] Rng substream(std::uint64_t k) const { return Rng(mix(seed_ ^ mix(k + 0x632be59bd9b4e019ULL))); }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    std::uint64_t next_u64() { return engine_(); }

    static std::uint64_t mix(std::uint64_t x) noexcept {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Each coordinate independently uniform in [lower[i], upper[i]].
[[nodiscard]] Config sample_uniform(Rng& rng, const SpaceBounds& bounds);

}  // namespace ltr
