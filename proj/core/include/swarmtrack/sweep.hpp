#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swarmtrack/config.hpp"

namespace swarmtrack {

/// First line of every sweep CSV; bump when the column set changes.
inline constexpr std::string_view sweep_schema_line = "# schema=swarmtrack-sweep/1";

/// Column header of a sweep CSV (second line).
inline constexpr std::string_view sweep_header =
    "row_key,fingerprint,series,target_policy,n_targets,target_speed,memory_length,degree,seed,horizon,status,"
    "tracking_performance,engagement_ratio,wall_seconds,message";

/// Grid of runs: base config crossed with per-parameter value lists and seeds.
/// An empty list means "the base value only".
struct SweepSpec {
    SwarmConfig base;
    std::vector<TargetPolicy> target_policies;
    std::vector<int> target_counts;
    std::vector<double> target_speeds;
    std::vector<std::int64_t> memory_lengths;
    std::vector<int> degrees;
    std::vector<std::uint64_t> seeds;
    /// Worker threads; 0 means default_jobs().
    int jobs{0};
};

/// Parses a sweep spec file. Same `key = value` grammar as config files;
/// the keys target_policy, n_targets, target_speed, memory_length and degree
/// take comma-separated lists, `seeds` lists the seeds and `jobs` sets the
/// worker count. All other keys set the base config.
[[nodiscard]] SweepSpec parse_sweep_spec(std::istream& in);
[[nodiscard]] SweepSpec load_sweep_spec(const std::filesystem::path& path);

/// Every config of the grid in enumeration order: policy, target count,
/// target speed, memory length, degree, then seed innermost. Each one is
/// validated; the first invalid config throws ConfigError.
[[nodiscard]] std::vector<SwarmConfig> enumerate_sweep(const SweepSpec& spec);

/// Identifies a run within a sweep: "<fingerprint>-<seed>".
[[nodiscard]] std::string row_key(const SwarmConfig& cfg);

/// One line of a sweep CSV.
struct SweepRow {
    std::string row_key;
    std::string fingerprint;
    std::string series;
    TargetPolicy target_policy{TargetPolicy::evasive};
    int n_targets{1};
    double target_speed{0.0};
    std::int64_t memory_length{0};
    int degree{0};
    std::uint64_t seed{0};
    std::int64_t horizon{0};
    bool ok{true};
    double tracking_performance{0.0};
    double engagement_ratio{0.0};
    double wall_seconds{0.0};
    std::string message;
};

/// Runs one config and fills a row; failures become error rows.
[[nodiscard]] SweepRow execute_run(const SwarmConfig& cfg);

[[nodiscard]] std::string format_sweep_row(const SweepRow& row);
/// Returns nullopt for a line that does not parse as a sweep row.
[[nodiscard]] std::optional<SweepRow> parse_sweep_row(std::string_view line);

/// Runs `configs` on `jobs` threads. `on_row` is called under a lock, strictly
/// in input order, as soon as each prefix of results is complete.
void run_ordered(const std::vector<SwarmConfig>& configs, int jobs,
                 const std::function<void(std::size_t, const SweepRow&)>& on_row);

/// Convenience wrapper collecting all rows in input order.
[[nodiscard]] std::vector<SweepRow> run_all(const std::vector<SwarmConfig>& configs, int jobs);

struct SweepOptions {
    int jobs{0};
    /// Keep rows already present in the output file and run only the rest.
    bool resume{false};
};

struct SweepReport {
    std::size_t total{0};
    std::size_t skipped{0};
    std::size_t executed{0};
    std::size_t failed{0};
};

/// Runs the grid and writes the sweep CSV to `out`, flushing rows in
/// enumeration order as they complete. An interrupted file is always a prefix
/// of the full output; with resume=true that prefix is kept (a torn last line
/// is dropped) and only missing rows run. Throws std::runtime_error on I/O
/// failure or when the existing file does not belong to this spec.
SweepReport run_sweep(const SweepSpec& spec, const std::filesystem::path& out, const SweepOptions& options = {});

/// Worker count from the SWARMTRACK_JOBS environment variable, else the
/// hardware concurrency (at least 1).
[[nodiscard]] int default_jobs();

/// Mean and sample standard deviation (n - 1); sd is 0 for fewer than two values.
struct MeanSd {
    double mean{0.0};
    double sd{0.0};
    std::size_t n{0};
};
[[nodiscard]] MeanSd mean_sd(const std::vector<double>& values);

/// Per-config aggregate over seeds.
struct ConfigSummary {
    std::string fingerprint;
    std::string series;
    TargetPolicy target_policy{TargetPolicy::evasive};
    int n_targets{1};
    double target_speed{0.0};
    std::int64_t memory_length{0};
    int degree{0};
    std::int64_t horizon{0};
    MeanSd tracking;
    MeanSd engagement;
    /// Degree with the highest mean tracking performance within the series (ties to lower k).
    int series_k_star{0};
};

/// Groups successful rows by fingerprint (first-appearance order) and fills series_k_star.
[[nodiscard]] std::vector<ConfigSummary> summarize_rows(const std::vector<SweepRow>& rows);

struct SummaryReport {
    std::vector<ConfigSummary> configs;
    std::size_t malformed{0};
    std::size_t failed{0};
};

/// Reads a sweep CSV, skipping comment lines and counting malformed and failed rows.
[[nodiscard]] SummaryReport summarize(std::istream& in);

inline constexpr std::string_view summary_header =
    "fingerprint,series,target_policy,n_targets,target_speed,memory_length,degree,horizon,runs,"
    "tracking_mean,tracking_sd,engagement_mean,engagement_sd,series_k_star";

void write_summary(std::ostream& out, const std::vector<ConfigSummary>& configs);

}  // namespace swarmtrack
