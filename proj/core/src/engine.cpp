#include "swarmtrack/engine.hpp"

#include <chrono>
#include <sstream>

#include "swarmtrack/strategy.hpp"
#include "swarmtrack/targets.hpp"
#include "swarmtrack/trace.hpp"

namespace swarmtrack {

namespace {

// Integrates one agent: velocity capped to `speed`, clamped to the arena with
// the wall-normal velocity component zeroed.
void integrate(AgentState& agent, Vec2 velocity, double speed, double side) {
    velocity = rescaled(velocity, speed);
    Vec2 next = agent.position + velocity;
    if (next.x < 0.0 || next.x > side) velocity.x = 0.0;
    if (next.y < 0.0 || next.y > side) velocity.y = 0.0;
    agent.position = clamp_to_arena(next, side);
    agent.velocity = velocity;
}

}  // namespace

std::optional<Vec2> detect_target(Vec2 position, const std::vector<TargetState>& targets, double radius) noexcept {
    const double radius_sq = radius * radius;
    std::optional<Vec2> best;
    double best_sq = 0.0;
    for (const auto& t : targets) {
        const double d = distance_sq(position, t.position);
        if (d <= radius_sq && (!best || d < best_sq)) {
            best = t.position;
            best_sq = d;
        }
    }
    return best;
}

WorldState init_world(const SwarmConfig& cfg) {
    validate_config(cfg);
    WorldState world;
    world.seed = cfg.seed;
    Rng placement = make_rng(cfg.seed, Stream::placement);
    world.agents.resize(static_cast<std::size_t>(cfg.n_agents));
    for (std::size_t i = 0; i < world.agents.size(); ++i) {
        auto& a = world.agents[i];
        a.id = static_cast<std::uint32_t>(i);
        a.position = uniform_point(placement, cfg.arena_side);
        a.repulsion = cfg.repulsion_max;
    }
    world.target_rng = make_rng(cfg.seed, Stream::targets);
    world.targets = place_targets(cfg.n_targets, world.target_rng, cfg);
    return world;
}

StepTally tally(const WorldState& world, const SwarmConfig& cfg) {
    StepTally out;
    std::vector<Vec2> positions;
    positions.reserve(world.agents.size());
    for (const auto& a : world.agents) {
        positions.push_back(a.position);
        out.engaged += a.tracking ? 1 : 0;
    }
    for (const auto& t : world.targets) out.covered += coverage(t, positions, cfg.radius());
    return out;
}

Simulation::Simulation(SwarmConfig cfg) : cfg_(validated(std::move(cfg))), world_(init_world(cfg_)) {}

Simulation::Simulation(SwarmConfig cfg, WorldState world)
    : cfg_(validated(std::move(cfg))), world_(std::move(world)) {}

StepTally Simulation::step() {
    if (cfg_.update_mode == UpdateMode::sync) {
        step_sync();
    } else {
        step_async();
    }
    step_targets();
    ++world_.step;
    check_finite();

    StepTally out;
    const double radius = cfg_.radius();
    for (std::size_t i = 0; i < world_.agents.size(); ++i) {
        positions_[i] = world_.agents[i].position;
        out.engaged += world_.agents[i].tracking ? 1 : 0;
    }
    for (const auto& t : world_.targets) out.covered += coverage(t, positions_, radius);
    return out;
}

void Simulation::step_sync() {
    const std::size_t n = world_.agents.size();
    const auto k = static_cast<std::size_t>(cfg_.degree);
    const std::int64_t now = world_.step;
    const double radius = cfg_.radius();

    positions_.resize(n);
    detections_.resize(n);
    records_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = world_.agents[i];
        positions_[i] = a.position;
        detections_[i] = detect_target(a.position, world_.targets, radius);
        records_[i] = record_detection(a.memory, detections_[i], now);
    }
    k_nearest(positions_, cfg_.degree, table_);

    next_ = world_.agents;
    neighbor_records_.resize(k);
    neighbor_positions_.resize(k);
    neighbor_ids_.resize(k);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& agent = world_.agents[i];
        const auto row = table_[i];
        for (std::size_t j = 0; j < k; ++j) {
            neighbor_records_[j] = records_[row[j]];
            neighbor_positions_[j] = positions_[row[j]];
            neighbor_ids_[j] = world_.agents[row[j]].id;
        }
        const auto resolved =
            resolve_attraction(agent.memory, detections_[i], neighbor_records_, now, cfg_.memory_length);

        auto& out = next_[i];
        out.memory = resolved.memory;
        out.tracking = resolved.tracking();
        out.repulsion = adapt_repulsion_strength(agent.repulsion, out.tracking, cfg_);

        const Vec2 attract_to = resolved.point.value_or(agent.position);
        const double r = agent_draw(world_.seed, now, agent.id);
        const Vec2 v_att =
            attraction_velocity(agent.velocity, agent.position, attract_to, cfg_.inertia, cfg_.social_weight, r);
        const Vec2 v_rep = repulsion_velocity(agent.position, neighbor_positions_, out.repulsion,
                                              cfg_.repulsion_exponent, agent.id, neighbor_ids_);
        integrate(out, v_att + v_rep, cfg_.agent_speed, cfg_.arena_side);
    }
    world_.agents.swap(next_);
}

// Agents update one after another in index order; each sees the positions and
// memories already written by the agents before it in the same step.
void Simulation::step_async() {
    const std::size_t n = world_.agents.size();
    const auto k = static_cast<std::size_t>(cfg_.degree);
    const std::int64_t now = world_.step;
    const double radius = cfg_.radius();

    positions_.resize(n);
    for (std::size_t i = 0; i < n; ++i) positions_[i] = world_.agents[i].position;

    std::vector<std::uint32_t> row(k);
    neighbor_records_.resize(k);
    neighbor_positions_.resize(k);
    neighbor_ids_.resize(k);
    for (std::size_t i = 0; i < n; ++i) {
        auto& agent = world_.agents[i];
        const auto detected = detect_target(agent.position, world_.targets, radius);
        k_nearest_of(positions_, i, row);
        for (std::size_t j = 0; j < k; ++j) {
            neighbor_records_[j] = world_.agents[row[j]].memory;
            neighbor_positions_[j] = positions_[row[j]];
            neighbor_ids_[j] = world_.agents[row[j]].id;
        }
        const auto resolved = resolve_attraction(agent.memory, detected, neighbor_records_, now, cfg_.memory_length);
        agent.memory = resolved.memory;
        agent.tracking = resolved.tracking();
        agent.repulsion = adapt_repulsion_strength(agent.repulsion, agent.tracking, cfg_);

        const Vec2 attract_to = resolved.point.value_or(agent.position);
        const double r = agent_draw(world_.seed, now, agent.id);
        const Vec2 v_att =
            attraction_velocity(agent.velocity, agent.position, attract_to, cfg_.inertia, cfg_.social_weight, r);
        const Vec2 v_rep = repulsion_velocity(agent.position, neighbor_positions_, agent.repulsion,
                                              cfg_.repulsion_exponent, agent.id, neighbor_ids_);
        integrate(agent, v_att + v_rep, cfg_.agent_speed, cfg_.arena_side);
        positions_[i] = agent.position;
    }
}

void Simulation::step_targets() {
    const std::size_t n = world_.agents.size();
    positions_.resize(n);
    for (std::size_t i = 0; i < n; ++i) positions_[i] = world_.agents[i].position;
    for (auto& t : world_.targets) t = step_target(t, positions_, world_.target_rng, cfg_);
    separate_targets(world_.targets, world_.target_rng, cfg_);
}

void Simulation::check_finite() const {
    for (const auto& a : world_.agents) {
        if (!a.position.finite() || !a.velocity.finite() || !std::isfinite(a.repulsion)) {
            std::ostringstream msg;
            msg << "non-finite agent state at step " << world_.step << ": id=" << a.id << " x=(" << a.position.x
                << ", " << a.position.y << ") v=(" << a.velocity.x << ", " << a.velocity.y
                << ") a_R=" << a.repulsion;
            throw SimulationError(msg.str());
        }
    }
    for (std::size_t m = 0; m < world_.targets.size(); ++m) {
        const auto& t = world_.targets[m];
        if (!t.position.finite() || !t.velocity.finite()) {
            std::ostringstream msg;
            msg << "non-finite target state at step " << world_.step << ": target=" << m << " x=("
                << t.position.x << ", " << t.position.y << ") v=(" << t.velocity.x << ", " << t.velocity.y << ")";
            throw SimulationError(msg.str());
        }
    }
}

WorldState step(WorldState world, const SwarmConfig& cfg) {
    Simulation sim(cfg, std::move(world));
    sim.step();
    return sim.world();
}

RunResult run(const SwarmConfig& cfg, const RunOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    Simulation sim(cfg);
    RunResult result;
    result.metrics = MetricsAccumulator(options.keep_series);

    std::optional<TraceWriter> trace;
    if (options.trace != nullptr) {
        trace.emplace(*options.trace, cfg);
        trace->write_header();
    }
    for (std::int64_t t = 0; t < cfg.horizon; ++t) {
        const StepTally counts = sim.step();
        if (trace) trace->write_step(sim.world());
        if (t >= cfg.warmup) result.metrics.record(counts);
    }
    result.zero_horizon = result.metrics.zero_horizon();
    result.tracking_performance = tracking_performance(result.metrics, cfg.n_targets);
    result.engagement_ratio = engagement_ratio(result.metrics, cfg.n_agents);
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

}  // namespace swarmtrack
