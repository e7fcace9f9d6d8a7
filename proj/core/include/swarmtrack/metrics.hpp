#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swarmtrack/state.hpp"
#include "swarmtrack/vec2.hpp"

namespace swarmtrack {

/// 1 when some agent lies within `radius` of the target (boundary inclusive).
[[nodiscard]] int coverage(const TargetState& target, std::span<const Vec2> agent_positions, double radius) noexcept;

/// Per-step totals: targets covered and agents in the tracking state.
struct StepTally {
    std::int64_t covered{0};
    std::int64_t engaged{0};

    friend bool operator==(const StepTally&, const StepTally&) = default;
};

/// Running sums for tracking performance and engagement ratio.
class MetricsAccumulator {
public:
    explicit MetricsAccumulator(bool keep_series = false) : keep_series_(keep_series) {}

    void record(StepTally tally);

    /// Combines the sums of two accumulators; series are concatenated.
    void merge(const MetricsAccumulator& other);

    [[nodiscard]] std::int64_t coverage_sum() const noexcept { return coverage_sum_; }
    [[nodiscard]] std::int64_t engagement_sum() const noexcept { return engagement_sum_; }
    [[nodiscard]] std::int64_t steps() const noexcept { return steps_; }
    [[nodiscard]] bool zero_horizon() const noexcept { return steps_ == 0; }
    [[nodiscard]] const std::vector<StepTally>& series() const noexcept { return series_; }

private:
    std::int64_t coverage_sum_{0};
    std::int64_t engagement_sum_{0};
    std::int64_t steps_{0};
    bool keep_series_{false};
    std::vector<StepTally> series_;
};

/// coverage_sum / (T * J); 0 when nothing was recorded (check zero_horizon()).
[[nodiscard]] double tracking_performance(const MetricsAccumulator& acc, int n_targets) noexcept;

/// engagement_sum / (N * T); 0 when nothing was recorded.
[[nodiscard]] double engagement_ratio(const MetricsAccumulator& acc, int n_agents) noexcept;

}  // namespace swarmtrack
