#ifndef DEBTSIM_EXPERIMENT_HPP
#define DEBTSIM_EXPERIMENT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "debtsim/policies.hpp"
#include "debtsim/system_config.hpp"

namespace debtsim {

/// Malformed or inconsistent experiment file; maps to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Parsed experiment file: the system instance (with q either given directly
/// or derived from boundary split weights), the policies to run, and the run
/// parameters. Unknown keys anywhere are errors.
///
/// Schema (JSON):
///   {
///     "system": {
///       "n_clients": 2, "period": 1,
///       "reliability": [0.5, 0.5],
///       "throughput": [0.25, 0.25],      // exactly one of throughput /
///       "boundary_split": [0.5, 0.5],    //   boundary_split
///       "debt_weight": [1.0, 1.0]        // optional, defaults to ones
///     },
///     "policies": [
///       {"kind": "mwdf", "tie_break": "lowest_id"},
///       {"kind": "weighted_debt", "alpha": [1, 2]},
///       {"kind": "fixed_order", "order": [2, 1]},
///       {"kind": "mdf"}, {"kind": "round_robin"}, {"kind": "uniform_random"}
///     ],
///     "run": {
///       "frames": 1000000,
///       "seeds": [1, 2, 3],              // or "seed_count": 20 (seeds 1..20)
///       "t_min": 1000,                   // optional
///       "record_stride": 64,             // optional
///       "initial_debts": [0, 0]          // optional
///     },
///     "output": {"dir": "out"}           // optional
///   }
struct ExperimentConfig {
    SystemConfig system;
    bool q_from_boundary_split = false;
    std::vector<double> boundary_split;
    std::vector<PolicySpec> policies;
    std::int64_t frames = 0;
    std::vector<std::uint64_t> seeds;
    std::int64_t t_min = 1000;
    std::int64_t record_stride = 64;
    std::vector<double> initial_debts;
    std::string out_dir;   // empty = unset
    nlohmann::json canonical;   // normalized config for hashing/provenance
};

ExperimentConfig parse_experiment_config(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::string& path);

/// Unique artifact names per policy: "mwdf", and "mwdf-2" for a duplicate.
std::vector<std::string> policy_artifact_names(const std::vector<PolicySpec>& policies);

/// Parse a policy name override such as "mdf" or "fixed_order:2,1".
PolicySpec parse_policy_name(const std::string& text);

}  // namespace debtsim

#endif
