#include "debtsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "debtsim/distributions.hpp"
#include "debtsim/errors.hpp"

namespace debtsim {

std::string to_string(DebtBoundKind kind) {
    switch (kind) {
        case DebtBoundKind::SymmetricExact: return "symmetric_exact";
        case DebtBoundKind::TwoUserSlot: return "two_user_slot";
        case DebtBoundKind::TwoUserGeneral: return "two_user_general";
        case DebtBoundKind::MultiUserSlot: return "multi_user_slot";
        case DebtBoundKind::None: return "none";
    }
    return "none";
}

LilStats lil_stats(const RunResult& result, const SystemConfig& config, std::int64_t t_min) {
    if (t_min < 16) throw std::invalid_argument("lil_stats: t_min must be >= 16");
    if (t_min != result.t_min) {
        throw std::invalid_argument(
            "lil_stats: extrema were tracked for t_min = " + std::to_string(result.t_min) +
            "; rerun with the requested window");
    }
    if (result.frames < t_min) {
        throw std::invalid_argument("lil_stats: window [t_min, T] is empty");
    }

    const int n = config.n_clients;
    LilStats stats;
    stats.t_min = t_min;
    stats.max_scaled_debt = result.max_scaled_debt;
    stats.max_scaled_martingale = result.max_scaled_martingale;
    stats.max_scaled_weighted_sum = result.max_scaled_weighted_sum;
    stats.min_scaled_weighted_sum = result.min_scaled_weighted_sum;

    const DiffusionConstants k = diffusion_constants(config);
    stats.martingale_target = k.sqrt_c;

    // Most specific applicable ceiling for limsup d_j/phi. The two-user
    // slot-frame bound takes precedence (it is the sharper statement for that
    // shape); otherwise a symmetric instance has the exact limit.
    if (n == 2 && config.period == 1) {
        stats.bound_kind = DebtBoundKind::TwoUserSlot;
        const double half_sum = (k.sqrt_c[0] + k.sqrt_c[1]) / 2.0;
        stats.debt_bound.resize(n);
        for (int j = 0; j < n; ++j) stats.debt_bound[j] = config.reliability[j] * half_sum;
    } else if (config.symmetric()) {
        stats.bound_kind = DebtBoundKind::SymmetricExact;
        const double per_client = config.reliability[0] * sigma_p_tau(config) / n;
        stats.debt_bound.assign(n, per_client);
    } else if (n == 2) {
        stats.bound_kind = DebtBoundKind::TwoUserGeneral;
        std::vector<int> full(n);
        std::iota(full.begin(), full.end(), 1);
        const double sigma_idle = std::sqrt(idle_table(full, config).idle_variance);
        const double half_sum = (k.sqrt_c[0] + k.sqrt_c[1] + sigma_idle) / 2.0;
        stats.debt_bound.resize(n);
        for (int j = 0; j < n; ++j) stats.debt_bound[j] = config.reliability[j] * half_sum;
    } else if (config.period == 1) {
        stats.bound_kind = DebtBoundKind::MultiUserSlot;
        const double mean_sqrt_c =
            std::accumulate(k.sqrt_c.begin(), k.sqrt_c.end(), 0.0) / static_cast<double>(n);
        stats.debt_bound.resize(n);
        for (int j = 0; j < n; ++j) stats.debt_bound[j] = config.reliability[j] * mean_sqrt_c;
    } else {
        stats.bound_kind = DebtBoundKind::None;
    }
    return stats;
}

SscStats ssc_stats(const RunResult& result, const SystemConfig&) {
    SscStats stats;
    stats.series = result.ssc_series;
    stats.max_integer_gap = result.max_integer_gap;

    // Log-log trend of the scaled gap over the grid; only positive values
    // carry information.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int m = 0;
    for (const SscPoint& pt : stats.series) {
        if (pt.scaled <= 0.0) continue;
        const double x = std::log(static_cast<double>(pt.t));
        const double y = std::log(pt.scaled);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m >= 2) {
        const double denom = static_cast<double>(m) * sxx - sx * sx;
        if (denom > 0.0) {
            stats.trend_slope = (static_cast<double>(m) * sxy - sx * sy) / denom;
            stats.slope_defined = true;
        }
    }
    return stats;
}

double default_kappa(const SystemConfig& config) {
    const double pmin = *std::min_element(config.reliability.begin(), config.reliability.end());
    return (config.period == 1) ? 1.0 + 1.0 / pmin : 1.0 + 2.0 / pmin;
}

double predicted_drift(const SystemConfig& config, int high_side) {
    if (config.n_clients != 2) {
        throw std::invalid_argument("predicted_drift: defined for two clients");
    }
    if (high_side != 1 && high_side != 2) {
        throw std::invalid_argument("predicted_drift: high_side must be 1 or 2");
    }
    const int h = high_side - 1;
    const int o = 1 - h;
    const double tau = static_cast<double>(config.period);
    const double qp_h = config.throughput[h] / config.reliability[h];
    const double qp_o = config.throughput[o] / config.reliability[o];
    const double used_h = tau * (1.0 - idle_table({high_side}, config).idle_fraction);
    const double used_full = tau * (1.0 - idle_table({1, 2}, config).idle_fraction);
    // Exact conditional drift of Z while the high side stays ahead; on the
    // full-set hyperplane this reduces to 2(q_h/p_h - tau(1 - I_{h})), and
    // for tau = 1 to -2 q_o/p_o.
    return qp_h - qp_o - 2.0 * used_h + used_full;
}

DriftEstimate drift_estimate(const SystemConfig& config, const PolicySpec& policy,
                             double kappa, std::int64_t frames, std::uint64_t seed,
                             int high_side, double initial_gap) {
    if (config.n_clients != 2) {
        throw std::invalid_argument("drift_estimate: defined for two clients");
    }
    if (!(kappa > 0.0)) throw std::invalid_argument("drift_estimate: kappa must be > 0");
    if (high_side != 1 && high_side != 2) {
        throw std::invalid_argument("drift_estimate: high_side must be 1 or 2");
    }
    if (initial_gap < 0.0) {
        throw std::invalid_argument("drift_estimate: initial_gap must be >= 0");
    }
    config.validate();
    policy.validate(config);

    // Start the chain at Z(0) = initial_gap with the chosen side inflated;
    // the decay path then samples the conditioning region Z > kappa.
    std::vector<double> origin(2, 0.0);
    origin[high_side - 1] = initial_gap * config.reliability[high_side - 1];

    Xoshiro256StarStar rng(seed);
    RandomOutcomeSource outcomes(rng);
    DebtState state = DebtState::with_origin(origin);

    const double inv_p1 = 1.0 / config.reliability[0];
    const double inv_p2 = 1.0 / config.reliability[1];
    auto z_of = [&](const DebtState& s) {
        return std::abs(s.debts[1] * inv_p2 - s.debts[0] * inv_p1);
    };

    DriftEstimate est;
    est.kappa = kappa;
    est.high_side = high_side;
    est.predicted = predicted_drift(config, high_side);

    double sum_delta = 0.0;
    for (std::int64_t frame = 0; frame < frames; ++frame) {
        const double z_before = z_of(state);
        const std::vector<int> order = priority_order(policy, state, config, rng);
        const FrameTrace trace = simulate_frame(state, order, config, outcomes);
        state = update_debts(state, trace, config);
        if (z_before > kappa) {
            ++est.events;
            sum_delta += z_of(state) - z_before;
        }
    }
    if (est.events > 0) {
        est.empirical_mean = sum_delta / static_cast<double>(est.events);
        est.conclusive = true;
    }
    return est;
}

PolicyCost policy_cost(const std::vector<RunResult>& results, const SystemConfig& config) {
    if (!config.symmetric()) {
        throw std::invalid_argument("policy_cost: defined for symmetric instances");
    }
    if (results.empty()) throw std::invalid_argument("policy_cost: no runs supplied");

    const int n = config.n_clients;
    PolicyCost cost;
    cost.v.assign(n, 0.0);
    cost.w.assign(n, 0.0);
    for (const RunResult& r : results) {
        if (static_cast<int>(r.max_scaled_weighted_debt.size()) != n) {
            throw std::invalid_argument("policy_cost: run shape does not match config");
        }
        for (int j = 0; j < n; ++j) {
            cost.v[j] += r.max_scaled_weighted_debt[j];
            cost.w[j] += r.min_scaled_weighted_debt[j];
        }
    }
    const double inv = 1.0 / static_cast<double>(results.size());
    for (int j = 0; j < n; ++j) {
        cost.v[j] *= inv;
        cost.w[j] *= inv;
    }
    cost.cost = *std::max_element(cost.v.begin(), cost.v.end());
    cost.sum_v = std::accumulate(cost.v.begin(), cost.v.end(), 0.0);
    cost.floor_value = sigma_p_tau(config) / static_cast<double>(n);
    return cost;
}

KolmogorovStats kolmogorov_sum_stats(const RunResult& result, const SystemConfig& config) {
    KolmogorovStats stats;
    stats.running_max = result.max_scaled_weighted_sum;
    stats.running_min = result.min_scaled_weighted_sum;
    stats.sigma_target = config.symmetric_reliability()
                             ? sigma_p_tau(config)
                             : std::numeric_limits<double>::quiet_NaN();
    return stats;
}

}  // namespace debtsim
