#include "swarmtrack/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "swarmtrack/rng.hpp"

namespace swarmtrack {

namespace {

double int_pow(double base, int exponent) noexcept {
    double result = 1.0;
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

// Unit direction from `a` towards `b` for a coincident pair.
Vec2 coincident_direction(std::uint32_t a, std::uint32_t b) noexcept {
    const std::uint32_t lo = std::min(a, b);
    const std::uint32_t hi = std::max(a, b);
    const double angle = 2.0 * std::numbers::pi * to_unit(splitmix64((std::uint64_t{lo} << 32) | hi));
    const Vec2 dir{std::cos(angle), std::sin(angle)};
    return a <= b ? dir : -dir;
}

bool stale(const Sighting& s, std::int64_t now, std::int64_t memory_length) noexcept {
    return s.time + memory_length < now;
}

}  // namespace

std::optional<Sighting> record_detection(std::optional<Sighting> memory, std::optional<Vec2> detected,
                                         std::int64_t now) {
    if (detected) memory = Sighting{*detected, now};
    return memory;
}

AttractionResolution resolve_attraction(const std::optional<Sighting>& memory, std::optional<Vec2> detected,
                                        std::span<const std::optional<Sighting>> neighbor_records,
                                        std::int64_t now, std::int64_t memory_length) {
    AttractionResolution out;
    out.memory = record_detection(memory, detected, now);
    if (out.memory && stale(*out.memory, now, memory_length)) out.memory.reset();

    const Sighting* freshest = nullptr;
    for (const auto& rec : neighbor_records) {
        if (rec && (freshest == nullptr || rec->time > freshest->time)) freshest = &*rec;
    }
    if (freshest != nullptr && stale(*freshest, now, memory_length)) freshest = nullptr;

    if (out.memory && (freshest == nullptr || out.memory->time > freshest->time)) {
        out.point = out.memory->point;
        out.source = AttractionSource::self_detection;
    } else if (freshest != nullptr) {
        out.point = freshest->point;
        out.source = AttractionSource::neighbor_relay;
    }
    return out;
}

Vec2 repulsion_velocity(Vec2 self, std::span<const Vec2> others, double strength, int exponent,
                        std::uint32_t self_id, std::span<const std::uint32_t> other_ids) {
    Vec2 sum;
    for (std::size_t j = 0; j < others.size(); ++j) {
        const Vec2 offset = others[j] - self;
        const double r = offset.norm();
        if (r < coincident_distance) {
            const auto other_id = other_ids.empty() ? static_cast<std::uint32_t>(j) : other_ids[j];
            sum -= coincident_prefactor * coincident_direction(self_id, other_id);
            continue;
        }
        const double prefactor = int_pow(strength / r, exponent);
        sum -= prefactor * Vec2{offset.x / r, offset.y / r};
    }
    return sum;
}

double adapt_repulsion_strength(double strength, bool tracking, const SwarmConfig& cfg) noexcept {
    // Values within rounding distance of a bound snap to it, so repeated
    // increments reach the bound after exactly ceil(gap / delta) updates.
    const auto near = [](double value, double bound) { return std::abs(value - bound) <= 1e-9 * std::max(1.0, std::abs(bound)); };
    if (tracking && strength > cfg.repulsion_min) {
        const double next = strength - cfg.delta_track;
        return next < cfg.repulsion_min || near(next, cfg.repulsion_min) ? cfg.repulsion_min : next;
    }
    if (!tracking && strength < cfg.repulsion_max) {
        const double next = strength + cfg.delta_explore;
        return next > cfg.repulsion_max || near(next, cfg.repulsion_max) ? cfg.repulsion_max : next;
    }
    return strength;
}

}  // namespace swarmtrack
