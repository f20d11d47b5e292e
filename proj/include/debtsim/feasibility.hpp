#ifndef DEBTSIM_FEASIBILITY_HPP
#define DEBTSIM_FEASIBILITY_HPP

#include <cstdint>
#include <vector>

#include "debtsim/system_config.hpp"

namespace debtsim {

/// Exhaustive enumeration caps at 2^20 subsets.
inline constexpr int kMaxExhaustiveClients = 20;

/// Result of testing q against every subset constraint
/// sum_{i in S} q_i/p_i <= tau (1 - I_S). Subsets are encoded as bitmasks:
/// bit j-1 set means client j is in S. slack[mask] = tau(1-I_S) - sum q/p.
struct FeasibilityReport {
    bool feasible = true;
    double tolerance = 0.0;
    std::vector<double> slack;             // indexed by mask, size 2^N
    std::vector<std::uint32_t> tight;      // |slack| <= tolerance, excluding the empty set
    std::vector<std::uint32_t> violated;   // slack < -tolerance
};

/// Client ids (1-based) contained in a subset mask, ascending.
std::vector<int> mask_clients(std::uint32_t mask);

/// Evaluates all 2^N subset slacks by DFS over clients with incremental
/// convolution of the truncated attempt pmfs (no subset is convolved from
/// scratch). Throws ResourceLimitError when N > kMaxExhaustiveClients.
FeasibilityReport check_feasibility(const SystemConfig& config, double tolerance = 1e-9);

/// A throughput vector constructed on the full-set hyperplane:
/// q_j = w_j * tau * p_j * (1 - I_full). Reports any other subset that is
/// tight or violated so the caller can pick interior weights.
struct BoundaryThroughputs {
    std::vector<double> q;
    std::vector<std::uint32_t> tight_other;      // tight subsets besides the full set
    std::vector<std::uint32_t> violated_other;   // violated subsets (q infeasible)
};

/// `config.throughput` is ignored; split_weights must be nonnegative and sum
/// to 1 (within 1e-12). Throws std::invalid_argument when a resulting q_j
/// falls outside (0,1), naming the offending client.
BoundaryThroughputs boundary_throughputs(const SystemConfig& config,
                                         const std::vector<double>& split_weights,
                                         double tolerance = 1e-9);

}  // namespace debtsim

#endif
