#include "debtsim/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "debtsim/errors.hpp"

namespace debtsim {

double phi(std::int64_t t) {
    if (t <= 0) throw std::invalid_argument("phi: t must be >= 1");
    static const double kLnLn16 = std::log(std::log(16.0));
    const double td = static_cast<double>(t);
    const double lnln = (t < 16) ? kLnLn16 : std::log(std::log(td));
    return std::sqrt(2.0 * td * lnln);
}

bool ScriptedOutcomeSource::attempt(int, double) {
    if (next_ >= script_.size()) {
        throw ContractViolation("scripted outcomes exhausted");
    }
    return script_[next_++];
}

FrameTrace simulate_frame(const DebtState& state, const std::vector<int>& order,
                          const SystemConfig& config, OutcomeSource& outcomes) {
    const int n = config.n_clients;
    const int tau = config.period;

    FrameTrace trace;
    trace.frame_index = state.frame_index;
    trace.priority_order = order;
    trace.attempts.assign(n, 0);
    trace.delivered.assign(n, 0);
    trace.idle_slots = 0;

    std::size_t head = 0;   // position in `order` of the next undelivered client
    for (int slot = 0; slot < tau; ++slot) {
        while (head < order.size() && trace.delivered[order[head] - 1]) ++head;
        if (head >= order.size()) {
            trace.idle_slots = tau - slot;
            break;
        }
        const int j = order[head] - 1;
        ++trace.attempts[j];
        if (outcomes.attempt(j, config.reliability[j])) {
            trace.delivered[j] = 1;
        }
    }
    return trace;
}

void RunConfig::validate() const {
    system.validate();
    policy.validate(system);
    if (frames < 1) throw std::invalid_argument("frames must be >= 1");
    if (record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");
    if (t_min < 16) throw std::invalid_argument("t_min must be >= 16");
    if (!initial_debts.empty() &&
        static_cast<int>(initial_debts.size()) != system.n_clients) {
        throw std::invalid_argument("initial_debts must have one entry per client");
    }
}

namespace {

bool zero_origin(const std::vector<double>& origin) {
    for (double v : origin) {
        if (v != 0.0) return false;
    }
    return true;
}

}  // namespace

// The frame loop below is the allocation-free equivalent of composing
// priority_order + simulate_frame + update_debts; a test pins the two paths
// to bit-identical results.
RunResult run(const RunConfig& config) {
    config.validate();
    const auto start_clock = std::chrono::steady_clock::now();

    const SystemConfig& sys = config.system;
    const int n = sys.n_clients;
    const int tau = sys.period;
    const std::int64_t T = config.frames;

    Xoshiro256StarStar rng(config.seed);

    std::vector<double> origin =
        config.initial_debts.empty() ? std::vector<double>(n, 0.0) : config.initial_debts;
    std::vector<double> stored_debts = origin;           // evolves per update_debts contract
    std::vector<std::int64_t> delivered_counts(n, 0);    // s_j

    RunResult result;
    result.seed = config.seed;
    result.rng_algorithm = Xoshiro256StarStar::kAlgorithmId;
    result.policy_name = config.policy.name();
    result.frames = T;
    result.t_min = config.t_min;
    result.record_stride = config.record_stride;
    result.attempt_totals.assign(n, 0);
    result.max_scaled_debt.assign(n, -std::numeric_limits<double>::infinity());
    result.max_scaled_martingale.assign(n, -std::numeric_limits<double>::infinity());
    result.max_scaled_weighted_debt.assign(n, -std::numeric_limits<double>::infinity());
    result.min_scaled_weighted_debt.assign(n, std::numeric_limits<double>::infinity());
    result.max_scaled_weighted_sum = -std::numeric_limits<double>::infinity();
    result.min_scaled_weighted_sum = std::numeric_limits<double>::infinity();

    // The exact integer debt gap only makes sense for equal q from a zero
    // origin (the gap then equals max_j s_j - min_j s_j).
    bool track_integer_gap = zero_origin(origin);
    for (int j = 1; j < n; ++j) {
        if (sys.throughput[j] != sys.throughput[0]) track_integer_gap = false;
    }
    result.max_integer_gap = track_integer_gap ? 0 : -1;

    const bool slot_frames = (tau == 1);
    std::vector<double> inv_p(n);
    for (int j = 0; j < n; ++j) inv_p[j] = 1.0 / sys.reliability[j];

    // Geometric grid for the state-space-collapse series.
    std::int64_t next_grid = std::min<std::int64_t>(config.t_min, T);
    double segment_max_gap = 0.0;

    std::vector<int> order(n);
    std::vector<int> attempts(n);
    std::vector<std::uint8_t> delivered(n);
    std::vector<double> debts(n), weighted(n), martingale(n);

    for (std::int64_t frame = 0; frame < T; ++frame) {
        priority_order_into(config.policy, stored_debts, frame, sys, rng, order);

        std::fill(attempts.begin(), attempts.end(), 0);
        std::fill(delivered.begin(), delivered.end(), 0);
        int idle_slots = 0;
        int head = 0;
        for (int slot = 0; slot < tau; ++slot) {
            while (head < n && delivered[order[head] - 1]) ++head;
            if (head >= n) {
                idle_slots = tau - slot;
                break;
            }
            const int j = order[head] - 1;
            ++attempts[j];
            if (rng.bernoulli(sys.reliability[j])) delivered[j] = 1;
        }

        const std::int64_t t = frame + 1;
        for (int j = 0; j < n; ++j) {
            stored_debts[j] = stored_debts[j] + sys.throughput[j] - (delivered[j] ? 1.0 : 0.0);
            delivered_counts[j] += delivered[j];
            result.attempt_totals[j] += attempts[j];
        }
        result.idle_total += idle_slots;

        const double td = static_cast<double>(t);
        const double phi_t = phi(t);

        // Rederived quantities: exact functions of the integer counters.
        double wsum = 0.0, wmax = -std::numeric_limits<double>::infinity(),
               wmin = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j) {
            debts[j] = origin[j] + td * sys.throughput[j]
                       - static_cast<double>(delivered_counts[j]);
            weighted[j] = debts[j] * inv_p[j];
            martingale[j] = static_cast<double>(result.attempt_totals[j])
                            - static_cast<double>(delivered_counts[j]) * inv_p[j];
            wsum += weighted[j];
            wmax = std::max(wmax, weighted[j]);
            wmin = std::min(wmin, weighted[j]);
        }
        segment_max_gap = std::max(segment_max_gap, wmax - wmin);

        if (track_integer_gap) {
            std::int64_t smax = delivered_counts[0], smin = delivered_counts[0];
            for (int j = 1; j < n; ++j) {
                smax = std::max(smax, delivered_counts[j]);
                smin = std::min(smin, delivered_counts[j]);
            }
            result.max_integer_gap = std::max(result.max_integer_gap, smax - smin);
        }

        if (t >= config.t_min) {
            for (int j = 0; j < n; ++j) {
                result.max_scaled_debt[j] = std::max(result.max_scaled_debt[j], debts[j] / phi_t);
                result.max_scaled_martingale[j] =
                    std::max(result.max_scaled_martingale[j], martingale[j] / phi_t);
                result.max_scaled_weighted_debt[j] =
                    std::max(result.max_scaled_weighted_debt[j], weighted[j] / phi_t);
                result.min_scaled_weighted_debt[j] =
                    std::min(result.min_scaled_weighted_debt[j], weighted[j] / phi_t);
            }
            result.max_scaled_weighted_sum =
                std::max(result.max_scaled_weighted_sum, wsum / phi_t);
            result.min_scaled_weighted_sum =
                std::min(result.min_scaled_weighted_sum, wsum / phi_t);
        }

        if (slot_frames) {
            double msum = 0.0;
            for (int j = 0; j < n; ++j) msum += martingale[j];
            result.max_identity_residual =
                std::max(result.max_identity_residual, std::abs(msum - wsum));
        }

        if (t == next_grid || t == T) {
            result.ssc_series.push_back(SscPoint{t, segment_max_gap, segment_max_gap / phi_t});
            segment_max_gap = 0.0;
            while (next_grid <= t) {
                next_grid = std::max(next_grid + 1,
                                     static_cast<std::int64_t>(
                                         std::ceil(static_cast<double>(next_grid) * 1.5)));
            }
        }

        if ((t - 1) % config.record_stride == 0 || t == T) {
            SeriesRow row;
            row.t = t;
            row.debts = debts;
            row.weighted_debts.resize(n);
            for (int j = 0; j < n; ++j) {
                row.weighted_debts[j] = debts[j] / sys.debt_weight[j];
            }
            row.scaled_debts.resize(n);
            for (int j = 0; j < n; ++j) row.scaled_debts[j] = debts[j] / phi_t;
            row.martingale = martingale;
            row.attempts = attempts;
            row.delivered = delivered;
            row.idle_slots = idle_slots;
            row.idle_cumulative = result.idle_total;
            row.phi_value = phi_t;
            result.series.push_back(std::move(row));
        }
    }

    result.final_state.frame_index = T;
    result.final_state.debts = std::move(stored_debts);
    result.final_state.delivered = std::move(delivered_counts);
    result.final_state.origin = std::move(origin);
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_clock).count();
    return result;
}

}  // namespace debtsim
