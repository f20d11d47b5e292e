#ifndef DEBTSIM_COMMANDS_HPP
#define DEBTSIM_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace debtsim {

/// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;       // config/usage errors
inline constexpr int kExitInfeasible = 2;  // domain negative result

struct CommandOptions {
    std::string config_path;
    std::string out_dir;                          // --out override
    std::optional<std::int64_t> frames;           // --frames
    std::vector<std::uint64_t> seeds;             // --seeds (overrides config)
    std::optional<std::string> policy;            // --policy (name override)
    std::optional<std::int64_t> t_min;            // --t-min
    std::optional<std::int64_t> record_stride;    // --stride
    std::string csv_path;                         // analyze input
};

int cmd_feasibility(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_simulate(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_analyze(const CommandOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace debtsim

#endif
