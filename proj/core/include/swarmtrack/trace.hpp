#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "swarmtrack/config.hpp"
#include "swarmtrack/metrics.hpp"

namespace swarmtrack {

struct WorldState;

/// Per-step trace CSV, one row per step after the step has been applied.
///
/// Header columns:
///   step
///   a<i>_x, a<i>_y, a<i>_s, a<i>_ar      for each agent i (s is the 0/1 tracking state)
///   t<m>_x, t<m>_y, t<m>_mode, t<m>_cov  for each target m (mode is waypoint|repel|evade)
///
/// Reals are written in shortest round-trip form, so equal states give
/// byte-identical files.
class TraceWriter {
public:
    TraceWriter(std::ostream& out, const SwarmConfig& cfg) : out_(out), cfg_(cfg) {}

    void write_header();
    void write_step(const WorldState& world);

private:
    std::ostream& out_;
    SwarmConfig cfg_;
    std::string line_;
};

/// Metrics recomputed from a trace.
struct TraceReplay {
    int n_agents{0};
    int n_targets{0};
    MetricsAccumulator metrics;

    [[nodiscard]] double tracking_performance() const noexcept {
        return swarmtrack::tracking_performance(metrics, n_targets);
    }
    [[nodiscard]] double engagement_ratio() const noexcept { return swarmtrack::engagement_ratio(metrics, n_agents); }
};

/// Sums the s and cov columns of a trace, skipping the first `warmup` rows.
/// Throws std::runtime_error on a malformed trace.
[[nodiscard]] TraceReplay replay_trace(std::istream& in, std::int64_t warmup = 0);

}  // namespace swarmtrack
