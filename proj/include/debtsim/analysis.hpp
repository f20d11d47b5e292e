#ifndef DEBTSIM_ANALYSIS_HPP
#define DEBTSIM_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "debtsim/engine.hpp"
#include "debtsim/system_config.hpp"

namespace debtsim {

/// Which theoretical ceiling applies to limsup d_j/phi for a given instance.
enum class DebtBoundKind {
    SymmetricExact,   // equal p,q: the limit is exactly p * sigma_{p,tau} / N
    TwoUserSlot,      // N=2, tau=1: p_j (sqrt c_1 + sqrt c_2) / 2
    TwoUserGeneral,   // N=2, tau>1: p_j (sqrt c_1 + sqrt c_2 + sigma_I) / 2
    MultiUserSlot,    // tau=1:      p_j sum sqrt c / N
    None,
};

std::string to_string(DebtBoundKind kind);

/// Running extrema of the scaled processes plus the applicable theoretical
/// values: per-client ceilings on limsup d_j/phi and the martingale targets
/// sqrt(c_j) for limsup M_j/phi.
struct LilStats {
    std::int64_t t_min = 0;
    std::vector<double> max_scaled_debt;
    std::vector<double> max_scaled_martingale;
    double max_scaled_weighted_sum = 0.0;
    double min_scaled_weighted_sum = 0.0;
    DebtBoundKind bound_kind = DebtBoundKind::None;
    std::vector<double> debt_bound;          // per client; empty when None
    std::vector<double> martingale_target;   // sqrt(c_j)
};

/// `t_min` must equal the t_min the run tracked (extrema are accumulated
/// in-engine and are not recomputable from the decimated series).
LilStats lil_stats(const RunResult& result, const SystemConfig& config, std::int64_t t_min);

/// State-space-collapse series (segment-max pairwise weighted-debt gap over
/// phi on the run's geometric grid), its log-log trend slope, and the exact
/// integer debt gap for symmetric instances.
struct SscStats {
    std::vector<SscPoint> series;
    double trend_slope = 0.0;
    bool slope_defined = false;
    std::int64_t max_integer_gap = -1;
};

SscStats ssc_stats(const RunResult& result, const SystemConfig& config);

/// Empirical conditional drift of Z = |d_2/p_2 - d_1/p_1| above a threshold.
struct DriftEstimate {
    double kappa = 0.0;
    std::int64_t events = 0;        // frames with Z(t) > kappa
    double empirical_mean = 0.0;    // mean of Z(t+1) - Z(t) over those frames
    double predicted = 0.0;
    bool conclusive = false;        // false when events == 0
    int high_side = 0;              // client (1-based) whose debt was inflated
};

/// Threshold from the two-user drift analysis: 1 + 1/min(p) for tau = 1,
/// 1 + 2/min(p) for tau > 1.
double default_kappa(const SystemConfig& config);

/// Predicted conditional drift when client `high_side` holds the larger
/// weighted debt: q_other/p_other + q_high/p_high - 2 tau (1 - I_{high}),
/// which reduces to -2 q_other/p_other for tau = 1 on the slot boundary and
/// to 2 (q_high/p_high - tau (1 - I_{high})) on the general boundary.
double predicted_drift(const SystemConfig& config, int high_side);

/// Measures the conditional drift by running `frames` frames of the policy
/// from an origin debt state with Z(0) = initial_gap on `high_side` (the
/// chain then decays through the conditioning region). N must be 2.
/// Zero conditioning events yield an inconclusive (not erroneous) estimate.
DriftEstimate drift_estimate(const SystemConfig& config, const PolicySpec& policy,
                             double kappa, std::int64_t frames, std::uint64_t seed,
                             int high_side, double initial_gap);

/// Heavy-traffic cost of a policy in the symmetric case: per-client
/// limsup/liminf proxies v_j, w_j (running extrema of d_j/(p phi) averaged
/// across seeds), the cost max_j v_j, and the theoretical floor
/// sigma_{p,tau}/N.
struct PolicyCost {
    std::vector<double> v;
    std::vector<double> w;
    double cost = 0.0;
    double sum_v = 0.0;
    double floor_value = 0.0;
};

/// All results must come from the same symmetric config (throws otherwise).
PolicyCost policy_cost(const std::vector<RunResult>& results, const SystemConfig& config);

/// Running extrema of sum_j d_j(t)/(p_j phi(t)) with the symmetric-case
/// target sigma_{p,tau} attached (the extrema match +/- sigma in the limit
/// for any non-idling policy on the hyperplane).
struct KolmogorovStats {
    double running_max = 0.0;
    double running_min = 0.0;
    double sigma_target = 0.0;
};

KolmogorovStats kolmogorov_sum_stats(const RunResult& result, const SystemConfig& config);

}  // namespace debtsim

#endif
