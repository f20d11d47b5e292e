#include "debtsim/debt.hpp"

#include <string>

#include "debtsim/errors.hpp"

namespace debtsim {

DebtState DebtState::zeros(int n_clients) {
    DebtState s;
    s.frame_index = 0;
    s.debts.assign(n_clients, 0.0);
    s.delivered.assign(n_clients, 0);
    s.origin.assign(n_clients, 0.0);
    return s;
}

DebtState DebtState::with_origin(std::vector<double> initial_debts) {
    DebtState s = zeros(static_cast<int>(initial_debts.size()));
    s.debts = initial_debts;
    s.origin = std::move(initial_debts);
    return s;
}

std::vector<double> rederived_debts(const DebtState& state, const SystemConfig& config) {
    std::vector<double> d(config.n_clients);
    const double t = static_cast<double>(state.frame_index);
    for (int j = 0; j < config.n_clients; ++j) {
        d[j] = state.origin[j] + t * config.throughput[j]
               - static_cast<double>(state.delivered[j]);
    }
    return d;
}

DebtState update_debts(const DebtState& state, const FrameTrace& trace,
                       const SystemConfig& config) {
    if (trace.frame_index != state.frame_index) {
        throw ContractViolation("update_debts: trace frame " +
                                std::to_string(trace.frame_index) +
                                " does not match state frame " +
                                std::to_string(state.frame_index));
    }
    DebtState next = state;
    next.frame_index = state.frame_index + 1;
    for (int j = 0; j < config.n_clients; ++j) {
        const double g = trace.delivered[j] ? 1.0 : 0.0;
        next.debts[j] = state.debts[j] + config.throughput[j] - g;
        next.delivered[j] = state.delivered[j] + (trace.delivered[j] ? 1 : 0);
    }
    return next;
}

std::vector<double> weighted_debt(const DebtState& state, const SystemConfig& config) {
    std::vector<double> w(config.n_clients);
    for (int j = 0; j < config.n_clients; ++j) {
        w[j] = state.debts[j] / config.debt_weight[j];
    }
    return w;
}

}  // namespace debtsim
