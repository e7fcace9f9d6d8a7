#include "swarmtrack/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "swarmtrack/csv.hpp"
#include "swarmtrack/engine.hpp"

namespace swarmtrack {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view text) {
    std::vector<std::string_view> items;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
        if (!item.empty()) items.push_back(item);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return items;
}

// Parses each list item through the config field parser so lists accept
// exactly what a single value would.
template <typename T>
std::vector<T> parse_list(std::string_view key, std::string_view text, T SwarmConfig::*member) {
    std::vector<T> values;
    for (const auto item : split_list(text)) {
        SwarmConfig scratch;
        set_config_value(scratch, key, item);
        values.push_back(scratch.*member);
    }
    if (values.empty()) throw ConfigError("empty value list for '" + std::string(key) + "'");
    return values;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    return ec == std::errc{} && ptr == end;
}

template <typename T>
std::vector<T> or_base(const std::vector<T>& values, T base) {
    return values.empty() ? std::vector<T>{base} : values;
}

}  // namespace

SweepSpec parse_sweep_spec(std::istream& in) {
    SweepSpec spec;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const auto key = trim(view.substr(0, eq));
        const auto value = trim(view.substr(eq + 1));
        try {
            if (key == "target_policy") {
                spec.target_policies = parse_list(key, value, &SwarmConfig::target_policy);
            } else if (key == "n_targets") {
                spec.target_counts = parse_list(key, value, &SwarmConfig::n_targets);
            } else if (key == "target_speed") {
                spec.target_speeds = parse_list(key, value, &SwarmConfig::target_speed);
            } else if (key == "memory_length") {
                spec.memory_lengths = parse_list(key, value, &SwarmConfig::memory_length);
            } else if (key == "degree") {
                spec.degrees = parse_list(key, value, &SwarmConfig::degree);
            } else if (key == "seeds") {
                spec.seeds = parse_list("seed", value, &SwarmConfig::seed);
            } else if (key == "jobs") {
                if (!parse_number(value, spec.jobs) || spec.jobs < 0) {
                    throw ConfigError("jobs must be a non-negative integer");
                }
            } else {
                set_config_value(spec.base, key, value);
            }
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sweep spec '" + path.string() + "'");
    return parse_sweep_spec(in);
}

std::vector<SwarmConfig> enumerate_sweep(const SweepSpec& spec) {
    const SwarmConfig& b = spec.base;
    std::vector<SwarmConfig> configs;
    for (const auto policy : or_base(spec.target_policies, b.target_policy)) {
        for (const auto count : or_base(spec.target_counts, b.n_targets)) {
            for (const auto speed : or_base(spec.target_speeds, b.target_speed)) {
                for (const auto memory : or_base(spec.memory_lengths, b.memory_length)) {
                    for (const auto degree : or_base(spec.degrees, b.degree)) {
                        for (const auto seed : or_base(spec.seeds, b.seed)) {
                            SwarmConfig c = b;
                            c.target_policy = policy;
                            c.n_targets = count;
                            c.target_speed = speed;
                            c.memory_length = memory;
                            c.degree = degree;
                            c.seed = seed;
                            try {
                                validate_config(c);
                            } catch (const ConfigError& e) {
                                throw ConfigError("sweep point " + std::to_string(configs.size()) + ": " +
                                                  e.what());
                            }
                            configs.push_back(c);
                        }
                    }
                }
            }
        }
    }
    return configs;
}

std::string row_key(const SwarmConfig& cfg) { return fingerprint(cfg) + "-" + std::to_string(cfg.seed); }

SweepRow execute_run(const SwarmConfig& cfg) {
    SweepRow row;
    row.row_key = row_key(cfg);
    row.fingerprint = fingerprint(cfg);
    row.series = fingerprint(cfg, false);
    row.target_policy = cfg.target_policy;
    row.n_targets = cfg.n_targets;
    row.target_speed = cfg.target_speed;
    row.memory_length = cfg.memory_length;
    row.degree = cfg.degree;
    row.seed = cfg.seed;
    row.horizon = cfg.horizon;
    try {
        const RunResult result = run(cfg);
        row.tracking_performance = result.tracking_performance;
        row.engagement_ratio = result.engagement_ratio;
        row.wall_seconds = result.wall_seconds;
        if (result.zero_horizon) row.message = "zero horizon";
    } catch (const std::exception& e) {
        row.ok = false;
        row.message = sanitize_csv_field(e.what());
    }
    return row;
}

std::string format_sweep_row(const SweepRow& r) {
    std::string line;
    line.reserve(200);
    line += r.row_key;
    line += ',' + r.fingerprint;
    line += ',' + r.series;
    line += ',' + std::string(to_string(r.target_policy));
    line += ',' + std::to_string(r.n_targets);
    line += ',' + format_real(r.target_speed);
    line += ',' + std::to_string(r.memory_length);
    line += ',' + std::to_string(r.degree);
    line += ',' + std::to_string(r.seed);
    line += ',' + std::to_string(r.horizon);
    line += r.ok ? ",ok" : ",error";
    line += ',' + (r.ok ? format_real(r.tracking_performance) : std::string());
    line += ',' + (r.ok ? format_real(r.engagement_ratio) : std::string());
    line += ',' + format_real(r.wall_seconds);
    line += ',' + sanitize_csv_field(r.message);
    return line;
}

std::optional<SweepRow> parse_sweep_row(std::string_view line) {
    const auto f = split_csv_line(line);
    if (f.size() != 15) return std::nullopt;
    SweepRow r;
    r.row_key = f[0];
    r.fingerprint = f[1];
    r.series = f[2];
    if (f[3] == "evasive") {
        r.target_policy = TargetPolicy::evasive;
    } else if (f[3] == "non_evasive") {
        r.target_policy = TargetPolicy::non_evasive;
    } else {
        return std::nullopt;
    }
    if (f[10] != "ok" && f[10] != "error") return std::nullopt;
    r.ok = f[10] == "ok";
    const bool numbers_ok = parse_number<int>(f[4], r.n_targets) && parse_number<double>(f[5], r.target_speed) &&
                            parse_number<std::int64_t>(f[6], r.memory_length) && parse_number<int>(f[7], r.degree) &&
                            parse_number<std::uint64_t>(f[8], r.seed) &&
                            parse_number<std::int64_t>(f[9], r.horizon) &&
                            parse_number<double>(f[13], r.wall_seconds);
    if (!numbers_ok) return std::nullopt;
    if (r.ok && !(parse_number<double>(f[11], r.tracking_performance) &&
                  parse_number<double>(f[12], r.engagement_ratio))) {
        return std::nullopt;
    }
    r.message = f[14];
    return r;
}

void run_ordered(const std::vector<SwarmConfig>& configs, int jobs,
                 const std::function<void(std::size_t, const SweepRow&)>& on_row) {
    const auto workers = static_cast<std::size_t>(std::max(1, jobs));
    std::mutex mutex;
    std::map<std::size_t, SweepRow> pending;
    std::size_t next_to_emit = 0;
    std::atomic<std::size_t> next_to_run{0};

    auto worker = [&] {
        for (std::size_t i = next_to_run++; i < configs.size(); i = next_to_run++) {
            SweepRow row = execute_run(configs[i]);
            std::lock_guard lock(mutex);
            pending.emplace(i, std::move(row));
            for (auto it = pending.find(next_to_emit); it != pending.end(); it = pending.find(next_to_emit)) {
                on_row(next_to_emit, it->second);
                pending.erase(it);
                ++next_to_emit;
            }
        }
    };

    if (workers == 1 || configs.size() <= 1) {
        worker();
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < std::min(workers, configs.size()); ++w) pool.emplace_back(worker);
}

std::vector<SweepRow> run_all(const std::vector<SwarmConfig>& configs, int jobs) {
    std::vector<SweepRow> rows(configs.size());
    run_ordered(configs, jobs, [&](std::size_t i, const SweepRow& row) { rows[i] = row; });
    return rows;
}

int default_jobs() {
    if (const char* env = std::getenv("SWARMTRACK_JOBS")) {
        int jobs = 0;
        if (parse_number(std::string_view(env), jobs) && jobs > 0) return jobs;
    }
    return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

SweepReport run_sweep(const SweepSpec& spec, const std::filesystem::path& out_path, const SweepOptions& options) {
    const auto configs = enumerate_sweep(spec);
    SweepReport report;
    report.total = configs.size();

    std::size_t done = 0;
    const bool resuming = options.resume && std::filesystem::exists(out_path);
    if (resuming) {
        std::string content;
        {
            std::ifstream in(out_path, std::ios::binary);
            if (!in) throw std::runtime_error("cannot read '" + out_path.string() + "'");
            std::ostringstream buffer;
            buffer << in.rdbuf();
            content = buffer.str();
        }
        const auto last_newline = content.rfind('\n');
        const std::size_t complete = last_newline == std::string::npos ? 0 : last_newline + 1;
        if (complete != content.size()) {
            content.resize(complete);
            std::filesystem::resize_file(out_path, complete);
        }
        std::istringstream lines(content);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(lines, line)) {
            if (line_no == 0 && line != sweep_schema_line) {
                throw std::runtime_error("'" + out_path.string() + "' is not a sweep file of this schema");
            }
            if (line_no == 1 && line != sweep_header) {
                throw std::runtime_error("'" + out_path.string() + "' has an unexpected header");
            }
            if (line_no >= 2) {
                const auto row = parse_sweep_row(line);
                if (!row || done >= configs.size() || row->row_key != row_key(configs[done])) {
                    throw std::runtime_error("existing row " + std::to_string(done + 1) + " of '" +
                                             out_path.string() + "' does not match this sweep");
                }
                ++done;
            }
            ++line_no;
        }
        if (line_no < 2) {
            // Schema line or header missing: start over.
            done = 0;
            std::ofstream reset(out_path, std::ios::trunc);
            reset << sweep_schema_line << '\n' << sweep_header << '\n';
        }
    } else {
        std::ofstream fresh(out_path, std::ios::trunc);
        if (!fresh) throw std::runtime_error("cannot write '" + out_path.string() + "'");
        fresh << sweep_schema_line << '\n' << sweep_header << '\n';
    }
    report.skipped = done;

    std::ofstream out(out_path, std::ios::app);
    if (!out) throw std::runtime_error("cannot append to '" + out_path.string() + "'");
    const std::vector<SwarmConfig> remaining(configs.begin() + static_cast<std::ptrdiff_t>(done), configs.end());
    bool io_failed = false;
    run_ordered(remaining, options.jobs > 0 ? options.jobs : (spec.jobs > 0 ? spec.jobs : default_jobs()),
                [&](std::size_t, const SweepRow& row) {
                    out << format_sweep_row(row) << '\n';
                    out.flush();
                    io_failed = io_failed || !out;
                    ++report.executed;
                    if (!row.ok) ++report.failed;
                });
    if (io_failed) throw std::runtime_error("write to '" + out_path.string() + "' failed");
    return report;
}

}  // namespace swarmtrack
