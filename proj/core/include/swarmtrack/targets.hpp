#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "swarmtrack/config.hpp"
#include "swarmtrack/rng.hpp"
#include "swarmtrack/state.hpp"

namespace swarmtrack {

class PlacementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rejection attempts per target before place_targets gives up.
inline constexpr int max_placement_attempts = 10000;

/// Straight-line motion towards the current waypoint at target_speed. A
/// target within target_speed of its waypoint draws a new one and holds
/// position for that step.
[[nodiscard]] TargetState nonevasive_step(TargetState target, Rng& rng, const SwarmConfig& cfg);

/// Evasive motion. Without agents inside the radius the target follows its
/// waypoints. With agents inside, it flees along the repulsion direction
/// computed from those agents (strength = radius), keeping its old heading if
/// the repulsion cancels out. After evade_limit consecutive contact steps it
/// sprints along its heading for evade_duration steps, reflecting off walls,
/// then resumes waypoint motion with a fresh waypoint.
[[nodiscard]] TargetState evasive_step(TargetState target, std::span<const Vec2> agents, Rng& rng,
                                       const SwarmConfig& cfg);

/// Dispatches on target.policy.
[[nodiscard]] TargetState step_target(const TargetState& target, std::span<const Vec2> agents, Rng& rng,
                                      const SwarmConfig& cfg);

/// Uniform positions with pairwise separation of at least twice the radius.
/// Throws PlacementError when a target cannot be placed.
[[nodiscard]] std::vector<TargetState> place_targets(int count, Rng& rng, const SwarmConfig& cfg);

/// Waypoint-following targets closer than twice the radius to a lower-index
/// target, and heading towards it, draw a fresh waypoint.
void separate_targets(std::span<TargetState> targets, Rng& rng, const SwarmConfig& cfg);

/// Clamps each coordinate into [0, side].
[[nodiscard]] Vec2 clamp_to_arena(Vec2 p, double side) noexcept;

/// `v` rescaled to `length`; the zero vector stays zero. Safe for very large components.
[[nodiscard]] Vec2 rescaled(Vec2 v, double length) noexcept;

}  // namespace swarmtrack
