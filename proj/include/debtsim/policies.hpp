#ifndef DEBTSIM_POLICIES_HPP
#define DEBTSIM_POLICIES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "debtsim/debt.hpp"
#include "debtsim/rng.hpp"
#include "debtsim/system_config.hpp"

namespace debtsim {

enum class PolicyKind {
    WeightedDebt,     // sort by d_j / alpha_j, alpha supplied
    Mwdf,             // alpha = p
    Mdf,              // alpha = 1
    RoundRobin,       // rotate the id order by frame index
    UniformRandom,    // fresh uniform permutation each frame
    FixedOrder,       // the same permutation every frame
};

enum class TieBreak { LowestId, Random };

/// A priority-ordering rule evaluated at each frame boundary. All kinds are
/// non-idling: they only choose the order in which undelivered packets are
/// served.
struct PolicySpec {
    PolicyKind kind = PolicyKind::Mwdf;
    TieBreak tie_break = TieBreak::LowestId;
    std::vector<double> alpha;        // WeightedDebt only, > 0
    std::vector<int> fixed_order;     // FixedOrder only, permutation of 1..N

    static PolicySpec mwdf(TieBreak tb = TieBreak::LowestId);
    static PolicySpec mdf(TieBreak tb = TieBreak::LowestId);
    static PolicySpec weighted(std::vector<double> alpha, TieBreak tb = TieBreak::LowestId);
    static PolicySpec round_robin();
    static PolicySpec uniform_random();
    static PolicySpec fixed(std::vector<int> order);

    /// Short name used in artifact file names and reports.
    std::string name() const;

    void validate(const SystemConfig& config) const;
};

/// Priority order for the coming frame: 1-based client ids, highest priority
/// first. Debt-based kinds sort by d_j(t)/alpha_j descending with the
/// configured tie break; deterministic given (policy, state, frame index,
/// rng state).
std::vector<int> priority_order(const PolicySpec& policy, const DebtState& state,
                                const SystemConfig& config, Xoshiro256StarStar& rng);

/// Allocation-free variant for the simulation loop; writes into `out`
/// (resized to N). Same ordering and same rng consumption as priority_order.
void priority_order_into(const PolicySpec& policy, const std::vector<double>& debts,
                         std::int64_t frame_index, const SystemConfig& config,
                         Xoshiro256StarStar& rng, std::vector<int>& out);

}  // namespace debtsim

#endif
