#ifndef DEBTSIM_ENGINE_HPP
#define DEBTSIM_ENGINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "debtsim/debt.hpp"
#include "debtsim/policies.hpp"
#include "debtsim/rng.hpp"
#include "debtsim/system_config.hpp"

namespace debtsim {

/// Iterated-logarithm scale sqrt(2 t ln ln t) for t >= 16; below 16 the
/// ln ln factor is frozen at its t=16 value so the scale stays positive and
/// monotone. Throws std::invalid_argument for t <= 0.
double phi(std::int64_t t);

/// Supplies per-attempt Bernoulli outcomes. The engine consumes one outcome
/// per transmission attempt, in slot order; idle slots consume nothing.
class OutcomeSource {
public:
    virtual ~OutcomeSource() = default;
    /// Outcome of attempting client `client_index` (0-based) whose per-slot
    /// success probability is p.
    virtual bool attempt(int client_index, double p) = 0;
};

class RandomOutcomeSource final : public OutcomeSource {
public:
    explicit RandomOutcomeSource(Xoshiro256StarStar& rng) : rng_(rng) {}
    bool attempt(int, double p) override { return rng_.bernoulli(p); }

private:
    Xoshiro256StarStar& rng_;
};

/// Scripted outcomes for unit tests: attempt k in slot order gets script[k].
/// Throws ContractViolation when the script runs out.
class ScriptedOutcomeSource final : public OutcomeSource {
public:
    explicit ScriptedOutcomeSource(std::vector<bool> script)
        : script_(std::move(script)) {}
    bool attempt(int client_index, double p) override;
    std::size_t consumed() const { return next_; }

private:
    std::vector<bool> script_;
    std::size_t next_ = 0;
};

/// Execute one frame: walk the slots, transmit to the first client in
/// `order` that still has an undelivered packet, mark deliveries, idle once
/// everyone is served.
FrameTrace simulate_frame(const DebtState& state, const std::vector<int>& order,
                          const SystemConfig& config, OutcomeSource& outcomes);

struct RunConfig {
    SystemConfig system;
    PolicySpec policy;
    std::int64_t frames = 0;
    std::uint64_t seed = 0;
    std::int64_t record_stride = 64;
    /// Running extrema of scaled quantities are accumulated for t >= t_min
    /// (every frame, never decimated). Must be >= 16.
    std::int64_t t_min = 1000;
    /// Optional origin debts d(0); empty means zeros.
    std::vector<double> initial_debts;

    void validate() const;
};

/// One decimated series sample, taken after frame t-1 completed (so the debt
/// vector is d(t)) together with that frame's per-client slot usage.
struct SeriesRow {
    std::int64_t t = 0;
    std::vector<double> debts;            // d_j(t), rederived from counters
    std::vector<double> weighted_debts;   // d_j(t)/alpha_j
    std::vector<double> scaled_debts;     // d_j(t)/phi(t)
    std::vector<double> martingale;       // M_j(t)
    std::vector<int> attempts;            // u_j of the last frame
    std::vector<std::uint8_t> delivered;  // g_j of the last frame
    int idle_slots = 0;                   // i of the last frame
    std::int64_t idle_cumulative = 0;
    double phi_value = 0.0;
};

/// One point of the state-space-collapse series: the maximum instantaneous
/// pairwise weighted-debt gap max_{j,k} |d_j/p_j - d_k/p_k| over the segment
/// (previous grid point, t], and that maximum divided by phi(t). Grid points
/// are ceil(t_min * 1.5^k), with the final point pinned to T.
struct SscPoint {
    std::int64_t t = 0;
    double segment_max_gap = 0.0;
    double scaled = 0.0;
};

struct RunResult {
    // provenance
    std::uint64_t seed = 0;
    std::string rng_algorithm;
    std::string policy_name;
    std::int64_t frames = 0;
    std::int64_t t_min = 0;
    std::int64_t record_stride = 0;
    double wall_seconds = 0.0;

    DebtState final_state;
    std::vector<std::int64_t> attempt_totals;   // sum_t u_j(t)
    std::int64_t idle_total = 0;
    std::vector<SeriesRow> series;
    std::vector<SscPoint> ssc_series;

    // Running extrema over t in [t_min, T], updated every frame.
    std::vector<double> max_scaled_debt;            // max d_j(t)/phi(t)
    std::vector<double> max_scaled_martingale;      // max M_j(t)/phi(t)
    std::vector<double> max_scaled_weighted_debt;   // max d_j(t)/(p_j phi(t))
    std::vector<double> min_scaled_weighted_debt;   // min of the same
    double max_scaled_weighted_sum = 0.0;           // extrema of
    double min_scaled_weighted_sum = 0.0;           //   sum_j d_j/(p_j phi)
    /// Symmetric-throughput runs only: max over all frame boundaries of
    /// max_j s_j - min_j s_j (equals the debt gap, exactly, in integers).
    /// -1 when the config is not symmetric in q.
    std::int64_t max_integer_gap = -1;
    /// Max residual |sum_j M_j - sum_j d_j/p_j| over recorded t (tau = 1
    /// runs; exact martingale/debt identity on the boundary). 0 when tau > 1.
    double max_identity_residual = 0.0;
};

/// Simulate `frames` frames under the configured policy. Deterministic for a
/// fixed config and seed, byte for byte. Infeasible q is legal.
RunResult run(const RunConfig& config);

}  // namespace debtsim

#endif
