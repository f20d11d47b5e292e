#ifndef DEBTSIM_DEBT_HPP
#define DEBTSIM_DEBT_HPP

#include <cstdint>
#include <vector>

#include "debtsim/system_config.hpp"

namespace debtsim {

/// Per-client debt vector at the beginning of frame `frame_index`, with the
/// cumulative delivery counts it derives from.
///
/// Identity: debts[j] = origin[j] + frame_index * q_j - delivered[j]. With the
/// default zero origin this is the canonical d_j(t) = t q_j - s_j(t). Debts
/// are stored incrementally for speed; rederived_debts() recomputes the exact
/// identity from the integer counters.
struct DebtState {
    std::int64_t frame_index = 0;
    std::vector<double> debts;
    std::vector<std::int64_t> delivered;   // s_j(t)
    std::vector<double> origin;            // d(0), zero in the canonical model

    static DebtState zeros(int n_clients);
    static DebtState with_origin(std::vector<double> initial_debts);
};

/// Exact re-derivation of the debt vector from integer counters.
std::vector<double> rederived_debts(const DebtState& state, const SystemConfig& config);

/// Everything that happened in one frame: the priority order used, slots
/// spent per client (u_j), delivery indicators (g_j), and idle slots i(t).
/// sum_j u_j + idle_slots == period always.
struct FrameTrace {
    std::int64_t frame_index = 0;
    std::vector<int> priority_order;        // 1-based client ids
    std::vector<int> attempts;              // u_j in {0,...,tau}
    std::vector<std::uint8_t> delivered;    // g_j in {0,1}
    int idle_slots = 0;
};

/// Advance the debt state by one frame: d_j(t+1) = d_j(t) + q_j - g_j(t),
/// s_j(t+1) = s_j(t) + g_j(t). Throws ContractViolation if the trace's frame
/// index does not match the state's.
DebtState update_debts(const DebtState& state, const FrameTrace& trace,
                       const SystemConfig& config);

/// d_j(t) / alpha_j per client.
std::vector<double> weighted_debt(const DebtState& state, const SystemConfig& config);

}  // namespace debtsim

#endif
