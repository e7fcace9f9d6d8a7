#include "swarmtrack/metrics.hpp"

namespace swarmtrack {

int coverage(const TargetState& target, std::span<const Vec2> agent_positions, double radius) noexcept {
    const double radius_sq = radius * radius;
    for (const Vec2& a : agent_positions) {
        if (distance_sq(a, target.position) <= radius_sq) return 1;
    }
    return 0;
}

void MetricsAccumulator::record(StepTally tally) {
    coverage_sum_ += tally.covered;
    engagement_sum_ += tally.engaged;
    ++steps_;
    if (keep_series_) series_.push_back(tally);
}

void MetricsAccumulator::merge(const MetricsAccumulator& other) {
    coverage_sum_ += other.coverage_sum_;
    engagement_sum_ += other.engagement_sum_;
    steps_ += other.steps_;
    series_.insert(series_.end(), other.series_.begin(), other.series_.end());
}

double tracking_performance(const MetricsAccumulator& acc, int n_targets) noexcept {
    if (acc.steps() == 0 || n_targets <= 0) return 0.0;
    return static_cast<double>(acc.coverage_sum()) / (static_cast<double>(acc.steps()) * n_targets);
}

double engagement_ratio(const MetricsAccumulator& acc, int n_agents) noexcept {
    if (acc.steps() == 0 || n_agents <= 0) return 0.0;
    return static_cast<double>(acc.engagement_sum()) / (static_cast<double>(acc.steps()) * n_agents);
}

}  // namespace swarmtrack
