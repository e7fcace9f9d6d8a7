#pragma once

#include <cstdint>
#include <random>

#include "swarmtrack/vec2.hpp"

namespace swarmtrack {

/// Generator for target waypoints and initial placement. mt19937_64 output is
/// fully specified by the standard, so runs are reproducible across toolchains.
using Rng = std::mt19937_64;

/// Independent stream tags mixed into the root seed.
enum class Stream : std::uint64_t {
    agent_draws = 0x61676e74ULL,
    placement = 0x706c6163ULL,
    targets = 0x74726774ULL,
};

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t seed, Stream stream) {
    return Rng{splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stream)))};
}

/// Uniform on [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double uniform01(Rng& rng) { return to_unit(rng()); }

inline Vec2 uniform_point(Rng& rng, double side) {
    const double x = uniform01(rng) * side;
    const double y = uniform01(rng) * side;
    return {x, y};
}

/// Counter-based draw for agent `id` at `step`: a pure function of its
/// arguments, so draws do not depend on agent ordering or on how many other
/// agents exist.
constexpr double agent_draw(std::uint64_t seed, std::int64_t step, std::uint32_t id) noexcept {
    std::uint64_t h = splitmix64(seed ^ static_cast<std::uint64_t>(Stream::agent_draws));
    h = splitmix64(h ^ static_cast<std::uint64_t>(step));
    h = splitmix64(h ^ (static_cast<std::uint64_t>(id) << 32 | 0x5bd1e995ULL));
    return to_unit(h);
}

}  // namespace swarmtrack
