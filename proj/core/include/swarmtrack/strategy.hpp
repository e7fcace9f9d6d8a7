#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "swarmtrack/config.hpp"
#include "swarmtrack/state.hpp"
#include "swarmtrack/vec2.hpp"

namespace swarmtrack {

enum class AttractionSource { none, self_detection, neighbor_relay };

/// Outcome of the point-of-attraction update for one agent on one step.
struct AttractionResolution {
    /// Empty exactly when source is none; the caller then attracts to its own position.
    std::optional<Vec2> point;
    AttractionSource source{AttractionSource::none};
    /// The agent's own memory after the update (new detection stored, stale record dropped).
    std::optional<Sighting> memory;

    [[nodiscard]] bool tracking() const noexcept { return point.has_value(); }
};

/// Distance under which two agents count as coincident for repulsion.
inline constexpr double coincident_distance = 1e-9;
/// Repulsion prefactor used for coincident pairs.
inline constexpr double coincident_prefactor = 1e6;

/// Stores a fresh detection in `memory` if there is one.
[[nodiscard]] std::optional<Sighting> record_detection(std::optional<Sighting> memory,
                                                       std::optional<Vec2> detected, std::int64_t now);

/// Point-of-attraction update with memory.
///
/// A detection overwrites the agent's memory first. A record is stale when
/// `time + memory_length < now`; a stale own record is erased, a stale
/// neighbor record is ignored for this step. Among neighbor records only the
/// most recent is considered (lower position in `neighbor_records` wins ties).
/// The own record wins only when strictly newer than the neighbor record.
/// Adopting a neighbor's point does not touch the agent's own memory.
[[nodiscard]] AttractionResolution resolve_attraction(const std::optional<Sighting>& memory,
                                                      std::optional<Vec2> detected,
                                                      std::span<const std::optional<Sighting>> neighbor_records,
                                                      std::int64_t now, std::int64_t memory_length);

/// Social-only PSO attraction: inertia * v_prev + social * r * (p - x).
[[nodiscard]] constexpr Vec2 attraction_velocity(Vec2 v_prev, Vec2 x, Vec2 p, double inertia, double social,
                                                 double r) noexcept {
    return inertia * v_prev + (social * r) * (p - x);
}

/// Inverse-power repulsion: -sum_j (strength / r_ij)^exponent * unit(x_j - x_i).
///
/// `self_id` and `other_ids` only matter for coincident pairs (distance below
/// coincident_distance): those get a fixed pseudo-random direction derived
/// from the id pair, antisymmetric under swapping the pair, with the prefactor
/// capped at coincident_prefactor. When `other_ids` is empty the span position
/// is used as the id.
[[nodiscard]] Vec2 repulsion_velocity(Vec2 self, std::span<const Vec2> others, double strength, int exponent,
                                      std::uint32_t self_id = 0, std::span<const std::uint32_t> other_ids = {});

/// Adaptive repulsion update: shrink by delta_track while tracking, grow by
/// delta_explore while exploring, clamped to [repulsion_min, repulsion_max].
[[nodiscard]] double adapt_repulsion_strength(double strength, bool tracking, const SwarmConfig& cfg) noexcept;

}  // namespace swarmtrack
