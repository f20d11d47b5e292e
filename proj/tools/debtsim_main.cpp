// debtsim: frame-based simulator and exact toolkit for deadline-constrained
// wireless scheduling under debt-based policies.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "debtsim/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"debt-based deadline scheduling simulator"};
    app.require_subcommand(1);

    debtsim::CommandOptions opts;
    std::string seeds_csv;
    std::int64_t frames = -1, t_min = -1, stride = -1;
    std::string policy;

    auto add_common = [&](CLI::App* cmd, bool with_run_flags) {
        cmd->add_option("--config", opts.config_path, "experiment config (JSON)")->required();
        if (with_run_flags) {
            cmd->add_option("--out", opts.out_dir, "output directory");
            cmd->add_option("--seeds", seeds_csv, "comma-separated seed list override");
            cmd->add_option("--frames", frames, "frame count override");
            cmd->add_option("--policy", policy,
                            "single policy override (e.g. mwdf, fixed_order:2,1)");
            cmd->add_option("--t-min", t_min, "extrema window start override");
            cmd->add_option("--stride", stride, "record stride override");
        }
    };

    CLI::App* feas = app.add_subcommand("feasibility", "rate-region membership report");
    add_common(feas, false);

    CLI::App* sim = app.add_subcommand("simulate", "run traces, write CSV + summary JSON");
    add_common(sim, true);

    CLI::App* sweep = app.add_subcommand("sweep", "seed sweep with aggregated JSON");
    add_common(sweep, true);

    CLI::App* analyze = app.add_subcommand("analyze", "re-analyze an existing trace CSV");
    add_common(analyze, false);
    analyze->add_option("--csv", opts.csv_path, "trace CSV to analyze")->required();
    analyze->add_option("--t-min", t_min, "extrema window start");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? debtsim::kExitUsage : debtsim::kExitOk;
    }

    if (frames >= 0) opts.frames = frames;
    if (t_min >= 0) opts.t_min = t_min;
    if (stride >= 0) opts.record_stride = stride;
    if (!policy.empty()) opts.policy = policy;
    if (!seeds_csv.empty()) {
        std::size_t pos = 0;
        while (pos <= seeds_csv.size()) {
            const std::size_t comma = seeds_csv.find(',', pos);
            const std::string tok = seeds_csv.substr(
                pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (!tok.empty()) {
                try {
                    opts.seeds.push_back(std::stoull(tok));
                } catch (const std::exception&) {
                    std::cerr << "bad seed \"" << tok << "\"\n";
                    return debtsim::kExitUsage;
                }
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }

    if (feas->parsed()) return debtsim::cmd_feasibility(opts, std::cout, std::cerr);
    if (sim->parsed()) return debtsim::cmd_simulate(opts, std::cout, std::cerr);
    if (sweep->parsed()) return debtsim::cmd_sweep(opts, std::cout, std::cerr);
    if (analyze->parsed()) return debtsim::cmd_analyze(opts, std::cout, std::cerr);
    return debtsim::kExitUsage;
}
