// swarmtrack: run single simulations, parameter sweeps and sweep summaries.
//
// Exit codes: 0 success, 1 invalid configuration or usage, 2 runtime failure.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swarmtrack/config.hpp"
#include "swarmtrack/csv.hpp"
#include "swarmtrack/engine.hpp"
#include "swarmtrack/sweep.hpp"
#include "swarmtrack/targets.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_runtime = 2;

constexpr std::string_view run_summary_header = "fingerprint,seed,tracking_performance,engagement_ratio,wall_seconds,zero_horizon";

struct SimulateArgs {
    std::string config;
    std::vector<std::string> overrides;
    std::string trace;
    std::string summary;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> warmup;
};

struct SweepArgs {
    std::string spec;
    std::string out;
    int jobs{0};
    bool resume{false};
};

struct SummarizeArgs {
    std::string in;
    std::string out;
};

int simulate(const SimulateArgs& args) {
    swarmtrack::SwarmConfig cfg;
    if (!args.config.empty()) cfg = swarmtrack::load_config(args.config);
    for (const auto& o : args.overrides) swarmtrack::apply_override(cfg, o);
    if (args.seed) cfg.seed = *args.seed;
    if (args.warmup) cfg.warmup = *args.warmup;
    swarmtrack::validate_config(cfg);

    std::ofstream trace_file;
    swarmtrack::RunOptions options;
    if (!args.trace.empty()) {
        trace_file.open(args.trace, std::ios::trunc);
        if (!trace_file) throw std::runtime_error("cannot write trace file '" + args.trace + "'");
        options.trace = &trace_file;
    }
    const auto result = swarmtrack::run(cfg, options);
    if (trace_file.is_open()) {
        trace_file.flush();
        if (!trace_file) throw std::runtime_error("write to trace file '" + args.trace + "' failed");
    }

    const std::string row = swarmtrack::fingerprint(cfg) + ',' + std::to_string(cfg.seed) + ',' +
                            swarmtrack::format_real(result.tracking_performance) + ',' +
                            swarmtrack::format_real(result.engagement_ratio) + ',' +
                            swarmtrack::format_real(result.wall_seconds) + ',' + (result.zero_horizon ? "1" : "0");
    if (!args.summary.empty()) {
        const bool fresh = !std::filesystem::exists(args.summary) || std::filesystem::file_size(args.summary) == 0;
        std::ofstream out(args.summary, std::ios::app);
        if (!out) throw std::runtime_error("cannot write summary file '" + args.summary + "'");
        if (fresh) out << run_summary_header << '\n';
        out << row << '\n';
    }
    std::cout << run_summary_header << '\n' << row << '\n';
    return exit_ok;
}

int sweep(const SweepArgs& args) {
    const auto spec = swarmtrack::load_sweep_spec(args.spec);
    swarmtrack::SweepOptions options;
    options.jobs = args.jobs;
    options.resume = args.resume;
    const auto report = swarmtrack::run_sweep(spec, args.out, options);
    std::cerr << "sweep: " << report.total << " runs, " << report.skipped << " already present, "
              << report.executed << " executed, " << report.failed << " failed\n";
    return exit_ok;
}

int summarize(const SummarizeArgs& args) {
    std::ifstream in(args.in);
    if (!in) throw std::runtime_error("cannot read '" + args.in + "'");
    const auto report = swarmtrack::summarize(in);
    std::ofstream out(args.out, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + args.out + "'");
    swarmtrack::write_summary(out, report.configs);
    if (report.malformed > 0) std::cerr << "warning: skipped " << report.malformed << " malformed rows\n";
    if (report.failed > 0) std::cerr << "warning: skipped " << report.failed << " failed runs\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decentralized swarm search-and-tracking simulator"};
    app.require_subcommand(1);

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Run one simulation and print its summary row");
    sim_cmd->add_option("--config", sim_args.config, "Config file (key = value lines)")->check(CLI::ExistingFile);
    sim_cmd->add_option("--set", sim_args.overrides, "Override a config key: --set key=value")->take_all();
    sim_cmd->add_option("--trace", sim_args.trace, "Write the per-step trace CSV to this file");
    sim_cmd->add_option("--summary", sim_args.summary, "Append the summary row to this CSV file");
    sim_cmd->add_option("--seed", sim_args.seed, "Root seed (overrides config)");
    sim_cmd->add_option("--warmup", sim_args.warmup, "Leading steps excluded from the metrics");

    SweepArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter grid and write one CSV row per run");
    sweep_cmd->add_option("--spec", sweep_args.spec, "Sweep spec file")->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("--out", sweep_args.out, "Output CSV")->required();
    sweep_cmd->add_option("--jobs", sweep_args.jobs, "Worker threads (default: SWARMTRACK_JOBS or core count)");
    sweep_cmd->add_flag("--resume", sweep_args.resume, "Keep completed rows of an existing output and run the rest");

    SummarizeArgs sum_args;
    auto* sum_cmd = app.add_subcommand("summarize", "Aggregate a sweep CSV over seeds");
    sum_cmd->add_option("--in", sum_args.in, "Sweep CSV")->required();
    sum_cmd->add_option("--out", sum_args.out, "Summary CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid;
    }

    try {
        if (sim_cmd->parsed()) return simulate(sim_args);
        if (sweep_cmd->parsed()) return sweep(sweep_args);
        if (sum_cmd->parsed()) return summarize(sum_args);
    } catch (const swarmtrack::ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return exit_invalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime;
    }
    return exit_ok;
}
