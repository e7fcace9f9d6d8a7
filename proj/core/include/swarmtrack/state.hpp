#pragma once

#include <cstdint>
#include <optional>

#include "swarmtrack/config.hpp"
#include "swarmtrack/vec2.hpp"

namespace swarmtrack {

/// A remembered target sighting: where it was seen and at which step.
struct Sighting {
    Vec2 point;
    std::int64_t time{0};

    friend bool operator==(const Sighting&, const Sighting&) = default;
};

struct AgentState {
    /// Stable identity; keys the agent's random stream and is preserved under relabeling.
    std::uint32_t id{0};
    Vec2 position;
    Vec2 velocity;
    /// Adaptive repulsion strength, kept within [repulsion_min, repulsion_max].
    double repulsion{0.0};
    /// Own most recent direct detection. Never holds relayed information.
    std::optional<Sighting> memory;
    /// True when the agent resolved a point of attraction on the last step.
    bool tracking{false};

    friend bool operator==(const AgentState&, const AgentState&) = default;
};

enum class TargetMode { waypoint, repel, evade };

struct TargetState {
    Vec2 position;
    Vec2 velocity;
    Vec2 waypoint;
    int contact_streak{0};
    int evade_remaining{0};
    TargetPolicy policy{TargetPolicy::non_evasive};

    /// Motion regime the target was in on its last step.
    [[nodiscard]] TargetMode mode() const noexcept {
        if (evade_remaining > 0) return TargetMode::evade;
        if (contact_streak > 0) return TargetMode::repel;
        return TargetMode::waypoint;
    }

    friend bool operator==(const TargetState&, const TargetState&) = default;
};

}  // namespace swarmtrack
