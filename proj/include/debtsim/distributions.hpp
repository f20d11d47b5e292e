#ifndef DEBTSIM_DISTRIBUTIONS_HPP
#define DEBTSIM_DISTRIBUTIONS_HPP

#include <cstdint>
#include <vector>

#include "debtsim/system_config.hpp"

namespace debtsim {

/// Exact pmf of X = sum_{i in S} gamma_i truncated at tau, where gamma_i is
/// the geometric attempt count of client i. mass[v] = P(X = v) for
/// v in {0,...,tau} (zero below |S|); everything above tau is lumped into
/// `overflow`. Masses are accumulated in ascending index order so results are
/// reproducible bit-for-bit on a given platform.
struct TruncatedSumPmf {
    int tau = 0;
    std::vector<double> mass;   // size tau+1, indexed by value
    double overflow = 0.0;

    double total() const;
};

/// Sequential convolution of the subset's geometric attempt pmfs.
/// `subset` holds 1-based client ids; throws std::invalid_argument when empty.
TruncatedSumPmf attempt_sum_pmf(const std::vector<int>& subset, const SystemConfig& config);

/// Idle-time law for a client subset: pmf of k = (tau - X)^+ idle slots, the
/// idle fraction I_S = E[k]/tau and the idle-time variance Var(k) in slots^2.
/// The empty subset idles the whole frame by convention (I = 1).
struct SubsetIdleTable {
    std::vector<int> subset;        // sorted 1-based ids
    std::vector<double> idle_pmf;   // index k = 0..tau
    double idle_fraction = 0.0;     // I_S
    double idle_variance = 0.0;     // sigma_I^2
};

SubsetIdleTable idle_table(const std::vector<int>& subset, const SystemConfig& config);

/// Per-client delivery probabilities pi_j under a strict fixed priority order
/// (serve the head-of-line undelivered client until success, then the next).
/// Computed by prefix differencing of sum_{m<=k} pi_{o_m}/p_{o_m}
/// = tau (1 - I_{prefix_k}). `order` must be a permutation of 1..N; the
/// result is indexed by client id - 1.
std::vector<double> delivery_probabilities(const std::vector<int>& order,
                                           const SystemConfig& config);

/// Distribution of the per-frame delivered-packet count y in the symmetric
/// case: y = min(N, Binomial(tau, p)) for any non-idling policy.
struct DeliveryCountDistribution {
    std::vector<double> pmf;   // index y = 0..N
    double mean = 0.0;
    double variance = 0.0;
};

/// Throws std::invalid_argument unless all reliabilities are equal.
DeliveryCountDistribution symmetric_delivery_distribution(const SystemConfig& config);

/// Standard deviation of the per-frame weighted-debt-sum increment
/// (N q - y)/p in the symmetric case, i.e. sqrt(Var(y))/p. This is the
/// iterated-logarithm constant for the scaled debt sum.
double sigma_p_tau(const SystemConfig& config);

/// Per-client martingale constants: v_j = (1-p_j)/p_j,
/// c_j = q_j (1-p_j)/p_j^2 = (q_j/p_j) v_j, and sqrt(c_j).
struct DiffusionConstants {
    std::vector<double> v;
    std::vector<double> c;
    std::vector<double> sqrt_c;
};

DiffusionConstants diffusion_constants(const SystemConfig& config);

namespace detail {

/// In-place convolution of a support-{0..tau} pmf with one geometric(p)
/// attempt count, ascending-index accumulation. Returns the mass pushed
/// above tau (the caller decides whether it needs the overflow bucket).
double convolve_geometric(std::vector<double>& mass, double p, int tau);

/// tau (1 - I_S) for a truncated-sum state: expected slots actually used.
double expected_used_slots(const std::vector<double>& mass, int tau);

}  // namespace detail

}  // namespace debtsim

#endif
