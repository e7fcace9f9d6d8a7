#include <cmath>
#include <istream>
#include <map>
#include <ostream>

#include "swarmtrack/csv.hpp"
#include "swarmtrack/sweep.hpp"

namespace swarmtrack {

MeanSd mean_sd(const std::vector<double>& values) {
    MeanSd out;
    out.n = values.size();
    if (values.empty()) return out;
    double sum = 0.0;
    for (const double v : values) sum += v;
    out.mean = sum / static_cast<double>(values.size());
    if (values.size() < 2) return out;
    double sq = 0.0;
    for (const double v : values) sq += (v - out.mean) * (v - out.mean);
    out.sd = std::sqrt(sq / static_cast<double>(values.size() - 1));
    return out;
}

std::vector<ConfigSummary> summarize_rows(const std::vector<SweepRow>& rows) {
    std::vector<ConfigSummary> configs;
    std::vector<std::vector<double>> tracking;
    std::vector<std::vector<double>> engagement;
    std::map<std::string, std::size_t> slot;

    for (const auto& row : rows) {
        if (!row.ok) continue;
        auto [it, inserted] = slot.try_emplace(row.fingerprint, configs.size());
        if (inserted) {
            ConfigSummary c;
            c.fingerprint = row.fingerprint;
            c.series = row.series;
            c.target_policy = row.target_policy;
            c.n_targets = row.n_targets;
            c.target_speed = row.target_speed;
            c.memory_length = row.memory_length;
            c.degree = row.degree;
            c.horizon = row.horizon;
            configs.push_back(c);
            tracking.emplace_back();
            engagement.emplace_back();
        }
        tracking[it->second].push_back(row.tracking_performance);
        engagement[it->second].push_back(row.engagement_ratio);
    }
    for (std::size_t i = 0; i < configs.size(); ++i) {
        configs[i].tracking = mean_sd(tracking[i]);
        configs[i].engagement = mean_sd(engagement[i]);
    }

    std::map<std::string, const ConfigSummary*> best;
    for (const auto& c : configs) {
        auto [it, inserted] = best.try_emplace(c.series, &c);
        const ConfigSummary* b = it->second;
        if (!inserted && (c.tracking.mean > b->tracking.mean ||
                          (c.tracking.mean == b->tracking.mean && c.degree < b->degree))) {
            it->second = &c;
        }
    }
    std::map<std::string, int> k_star;
    for (const auto& [series, c] : best) k_star[series] = c->degree;
    for (auto& c : configs) c.series_k_star = k_star[c.series];
    return configs;
}

SummaryReport summarize(std::istream& in) {
    SummaryReport report;
    std::vector<SweepRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen && line.starts_with("row_key,")) {
            header_seen = true;
            continue;
        }
        auto row = parse_sweep_row(line);
        if (!row) {
            ++report.malformed;
            continue;
        }
        if (!row->ok) {
            ++report.failed;
            continue;
        }
        rows.push_back(std::move(*row));
    }
    report.configs = summarize_rows(rows);
    return report;
}

void write_summary(std::ostream& out, const std::vector<ConfigSummary>& configs) {
    out << summary_header << '\n';
    for (const auto& c : configs) {
        out << c.fingerprint << ',' << c.series << ',' << to_string(c.target_policy) << ',' << c.n_targets << ','
            << format_real(c.target_speed) << ',' << c.memory_length << ',' << c.degree << ',' << c.horizon << ','
            << c.tracking.n << ',' << format_real(c.tracking.mean) << ',' << format_real(c.tracking.sd) << ','
            << format_real(c.engagement.mean) << ',' << format_real(c.engagement.sd) << ',' << c.series_k_star
            << '\n';
    }
}

}  // namespace swarmtrack
