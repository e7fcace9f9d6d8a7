#include "swarmtrack/trace.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "swarmtrack/csv.hpp"
#include "swarmtrack/engine.hpp"

namespace swarmtrack {

namespace {

void append_real(std::string& line, double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    line.append(buf, ptr);
}

std::string_view mode_name(TargetMode m) {
    switch (m) {
        case TargetMode::waypoint: return "waypoint";
        case TargetMode::repel: return "repel";
        case TargetMode::evade: return "evade";
    }
    return "waypoint";
}

}  // namespace

void TraceWriter::write_header() {
    line_ = "step";
    for (int i = 0; i < cfg_.n_agents; ++i) {
        const std::string p = ",a" + std::to_string(i) + "_";
        line_ += p + "x" + p + "y" + p + "s" + p + "ar";
    }
    for (int m = 0; m < cfg_.n_targets; ++m) {
        const std::string p = ",t" + std::to_string(m) + "_";
        line_ += p + "x" + p + "y" + p + "mode" + p + "cov";
    }
    line_ += '\n';
    out_ << line_;
}

void TraceWriter::write_step(const WorldState& world) {
    line_.clear();
    line_ += std::to_string(world.step);
    std::vector<Vec2> positions;
    positions.reserve(world.agents.size());
    for (const auto& a : world.agents) {
        positions.push_back(a.position);
        line_ += ',';
        append_real(line_, a.position.x);
        line_ += ',';
        append_real(line_, a.position.y);
        line_ += a.tracking ? ",1," : ",0,";
        append_real(line_, a.repulsion);
    }
    for (const auto& t : world.targets) {
        line_ += ',';
        append_real(line_, t.position.x);
        line_ += ',';
        append_real(line_, t.position.y);
        line_ += ',';
        line_ += mode_name(t.mode());
        line_ += coverage(t, positions, cfg_.radius()) ? ",1" : ",0";
    }
    line_ += '\n';
    out_ << line_;
}

TraceReplay replay_trace(std::istream& in, std::int64_t warmup) {
    TraceReplay replay;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("trace is empty");
    const auto header = split_csv_line(line);
    std::vector<std::size_t> s_cols;
    std::vector<std::size_t> cov_cols;
    for (std::size_t c = 0; c < header.size(); ++c) {
        const auto& name = header[c];
        if (name.size() > 2 && name.ends_with("_s") && name.front() == 'a') s_cols.push_back(c);
        if (name.ends_with("_cov") && name.front() == 't') cov_cols.push_back(c);
    }
    if (header.empty() || header.front() != "step") throw std::runtime_error("trace header must start with 'step'");
    replay.n_agents = static_cast<int>(s_cols.size());
    replay.n_targets = static_cast<int>(cov_cols.size());

    std::int64_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw std::runtime_error("trace row " + std::to_string(row + 1) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(header.size()));
        }
        StepTally tally;
        for (const auto c : s_cols) tally.engaged += fields[c] == "1" ? 1 : 0;
        for (const auto c : cov_cols) tally.covered += fields[c] == "1" ? 1 : 0;
        if (row >= warmup) replay.metrics.record(tally);
        ++row;
    }
    return replay;
}

}  // namespace swarmtrack
