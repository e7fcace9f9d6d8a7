#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "swarmtrack/config.hpp"
#include "swarmtrack/metrics.hpp"
#include "swarmtrack/network.hpp"
#include "swarmtrack/rng.hpp"
#include "swarmtrack/state.hpp"

namespace swarmtrack {

/// Raised when a step produces a non-finite state. The message carries a dump
/// of the offending entity.
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Complete simulation state at one step.
struct WorldState {
    std::int64_t step{0};
    std::vector<AgentState> agents;
    std::vector<TargetState> targets;
    std::uint64_t seed{0};
    /// Target substream (waypoints). Agent draws are counter based and carry no state.
    Rng target_rng;

    friend bool operator==(const WorldState&, const WorldState&) = default;
};

/// Uniform agent positions, zero velocities, maximal repulsion strength, empty
/// memories, targets placed with pairwise separation. Validates `cfg`.
[[nodiscard]] WorldState init_world(const SwarmConfig& cfg);

/// Position of the nearest target within the radius of `position`, ties to the lower target index.
[[nodiscard]] std::optional<Vec2> detect_target(Vec2 position, const std::vector<TargetState>& targets,
                                                double radius) noexcept;

/// Covered targets and engaged agents in `world` as it stands.
[[nodiscard]] StepTally tally(const WorldState& world, const SwarmConfig& cfg);

/// Steps a world in place, reusing scratch buffers between steps.
class Simulation {
public:
    /// Validates `cfg` and builds the initial world.
    explicit Simulation(SwarmConfig cfg);
    /// Continues from an existing world; `cfg` must be the one it was built with.
    Simulation(SwarmConfig cfg, WorldState world);

    /// Advances one step and returns the tally of the new state.
    StepTally step();

    [[nodiscard]] const WorldState& world() const noexcept { return world_; }
    [[nodiscard]] const SwarmConfig& config() const noexcept { return cfg_; }

private:
    void step_sync();
    void step_async();
    void step_targets();
    void check_finite() const;

    SwarmConfig cfg_;
    WorldState world_;

    std::vector<Vec2> positions_;
    std::vector<std::optional<Vec2>> detections_;
    std::vector<std::optional<Sighting>> records_;
    std::vector<std::optional<Sighting>> neighbor_records_;
    std::vector<Vec2> neighbor_positions_;
    std::vector<std::uint32_t> neighbor_ids_;
    std::vector<AgentState> next_;
    NeighborTable table_;
};

/// One synchronous (or async, per cfg.update_mode) step, value in value out.
[[nodiscard]] WorldState step(WorldState world, const SwarmConfig& cfg);

struct RunOptions {
    /// When set, receives the per-step trace CSV.
    std::ostream* trace{nullptr};
    /// Keep per-step (covered, engaged) totals in the result.
    bool keep_series{false};
};

struct RunResult {
    double tracking_performance{0.0};
    double engagement_ratio{0.0};
    /// No step contributed to the metrics (horizon <= warmup).
    bool zero_horizon{false};
    MetricsAccumulator metrics;
    double wall_seconds{0.0};
};

/// Runs cfg.horizon steps from init_world(cfg). Steps before cfg.warmup are
/// simulated but not counted.
[[nodiscard]] RunResult run(const SwarmConfig& cfg, const RunOptions& options = {});

}  // namespace swarmtrack
