#include "swarmtrack/targets.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swarmtrack/strategy.hpp"

namespace swarmtrack {

Vec2 clamp_to_arena(Vec2 p, double side) noexcept {
    return {std::clamp(p.x, 0.0, side), std::clamp(p.y, 0.0, side)};
}

Vec2 rescaled(Vec2 v, double length) noexcept {
    const double scale = std::max(std::abs(v.x), std::abs(v.y));
    if (scale == 0.0 || !std::isfinite(scale)) return {};
    const Vec2 unit_ish{v.x / scale, v.y / scale};
    const double n = unit_ish.norm();
    return {unit_ish.x / n * length, unit_ish.y / n * length};
}

TargetState nonevasive_step(TargetState target, Rng& rng, const SwarmConfig& cfg) {
    const double speed = cfg.target_speed;
    const Vec2 to_waypoint = target.waypoint - target.position;
    const double dist = to_waypoint.norm();
    if (dist < speed) {
        target.waypoint = uniform_point(rng, cfg.arena_side);
        target.velocity = {};
        return target;
    }
    if (dist == 0.0) {
        target.velocity = {};
        return target;
    }
    const double travel = std::min(speed, dist);
    target.velocity = {to_waypoint.x / dist * travel, to_waypoint.y / dist * travel};
    target.position = clamp_to_arena(target.position + target.velocity, cfg.arena_side);
    return target;
}

TargetState evasive_step(TargetState target, std::span<const Vec2> agents, Rng& rng, const SwarmConfig& cfg) {
    const double side = cfg.arena_side;
    const double speed = cfg.target_speed;

    if (target.evade_remaining > 0) {
        Vec2 heading = target.velocity;
        const Vec2 next = target.position + heading;
        if (next.x < 0.0 || next.x > side) heading.x = -heading.x;
        if (next.y < 0.0 || next.y > side) heading.y = -heading.y;
        target.position = clamp_to_arena(next, side);
        target.velocity = heading;
        if (--target.evade_remaining == 0) {
            target.contact_streak = 0;
            target.waypoint = uniform_point(rng, side);
        }
        return target;
    }

    const double radius = cfg.radius();
    const double radius_sq = radius * radius;
    std::vector<Vec2> pursuers;
    for (const Vec2& a : agents) {
        if (distance_sq(target.position, a) <= radius_sq) pursuers.push_back(a);
    }

    if (pursuers.empty()) {
        target.contact_streak = 0;
        return nonevasive_step(target, rng, cfg);
    }

    const Vec2 push = repulsion_velocity(target.position, pursuers, radius, cfg.repulsion_exponent);
    const Vec2 heading = rescaled(push, speed);
    if (heading != Vec2{}) {
        target.velocity = heading;
    } else {
        target.velocity = rescaled(target.velocity, speed);
    }
    target.position = clamp_to_arena(target.position + target.velocity, side);
    if (++target.contact_streak >= cfg.evade_limit) target.evade_remaining = cfg.evade_duration;
    return target;
}

TargetState step_target(const TargetState& target, std::span<const Vec2> agents, Rng& rng,
                        const SwarmConfig& cfg) {
    return target.policy == TargetPolicy::evasive ? evasive_step(target, agents, rng, cfg)
                                                  : nonevasive_step(target, rng, cfg);
}

std::vector<TargetState> place_targets(int count, Rng& rng, const SwarmConfig& cfg) {
    const double min_gap_sq = 4.0 * cfg.radius() * cfg.radius();
    std::vector<TargetState> targets;
    targets.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int m = 0; m < count; ++m) {
        bool placed = false;
        for (int attempt = 0; attempt < max_placement_attempts && !placed; ++attempt) {
            const Vec2 candidate = uniform_point(rng, cfg.arena_side);
            placed = std::all_of(targets.begin(), targets.end(), [&](const TargetState& t) {
                return distance_sq(t.position, candidate) >= min_gap_sq;
            });
            if (placed) {
                TargetState t;
                t.position = candidate;
                t.policy = cfg.target_policy;
                targets.push_back(t);
            }
        }
        if (!placed) {
            throw PlacementError("could not place target " + std::to_string(m + 1) + " of " +
                                 std::to_string(count) + " after " + std::to_string(max_placement_attempts) +
                                 " attempts; arena too crowded");
        }
    }
    for (auto& t : targets) t.waypoint = uniform_point(rng, cfg.arena_side);
    return targets;
}

void separate_targets(std::span<TargetState> targets, Rng& rng, const SwarmConfig& cfg) {
    const double min_gap_sq = 4.0 * cfg.radius() * cfg.radius();
    for (std::size_t b = 1; b < targets.size(); ++b) {
        TargetState& mover = targets[b];
        if (mover.mode() != TargetMode::waypoint) continue;
        for (std::size_t a = 0; a < b; ++a) {
            const Vec2 to_other = targets[a].position - mover.position;
            if (to_other.norm_sq() < min_gap_sq && dot(mover.waypoint - mover.position, to_other) > 0.0) {
                mover.waypoint = uniform_point(rng, cfg.arena_side);
                break;
            }
        }
    }
}

}  // namespace swarmtrack
