#include "debtsim/feasibility.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "debtsim/distributions.hpp"
#include "debtsim/errors.hpp"

namespace debtsim {

namespace {

// Depth-first over clients with incremental convolution, so no subset's pmf
// is ever rebuilt from scratch.
void walk_subsets(const SystemConfig& config, int next_client, std::uint32_t mask,
                  const std::vector<double>& mass, double qp_sum,
                  std::vector<double>& slack) {
    const int tau = config.period;
    slack[mask] = (mask == 0) ? 0.0 : detail::expected_used_slots(mass, tau) - qp_sum;
    for (int i = next_client; i < config.n_clients; ++i) {
        std::vector<double> extended = mass;
        detail::convolve_geometric(extended, config.reliability[i], tau);
        walk_subsets(config, i + 1, mask | (1u << i), extended,
                     qp_sum + config.throughput[i] / config.reliability[i], slack);
    }
}

}  // namespace

std::vector<int> mask_clients(std::uint32_t mask) {
    std::vector<int> ids;
    for (int j = 0; mask != 0; ++j, mask >>= 1) {
        if (mask & 1u) ids.push_back(j + 1);
    }
    return ids;
}

FeasibilityReport check_feasibility(const SystemConfig& config, double tolerance) {
    config.validate();
    if (tolerance < 0.0) throw std::invalid_argument("tolerance must be >= 0");
    if (config.n_clients > kMaxExhaustiveClients) {
        throw ResourceLimitError("check_feasibility: exhaustive enumeration capped at " +
                                 std::to_string(kMaxExhaustiveClients) + " clients, got " +
                                 std::to_string(config.n_clients));
    }

    FeasibilityReport report;
    report.tolerance = tolerance;
    report.slack.assign(std::size_t{1} << config.n_clients, 0.0);

    std::vector<double> empty_mass(config.period + 1, 0.0);
    empty_mass[0] = 1.0;
    walk_subsets(config, 0, 0u, empty_mass, 0.0, report.slack);

    for (std::uint32_t mask = 1; mask < report.slack.size(); ++mask) {
        const double s = report.slack[mask];
        if (s < -tolerance) {
            report.violated.push_back(mask);
        } else if (std::abs(s) <= tolerance) {
            report.tight.push_back(mask);
        }
    }
    report.feasible = report.violated.empty();
    return report;
}

BoundaryThroughputs boundary_throughputs(const SystemConfig& config,
                                         const std::vector<double>& split_weights,
                                         double tolerance) {
    if (config.n_clients < 1 || config.period < 1) {
        throw std::invalid_argument("boundary_throughputs: invalid instance shape");
    }
    if (static_cast<int>(split_weights.size()) != config.n_clients) {
        throw std::invalid_argument("boundary_throughputs: one split weight per client");
    }
    double wsum = 0.0;
    for (double w : split_weights) {
        if (w < 0.0) throw std::invalid_argument("boundary_throughputs: weights must be >= 0");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-12) {
        throw std::invalid_argument("boundary_throughputs: weights must sum to 1");
    }

    std::vector<int> full(config.n_clients);
    std::iota(full.begin(), full.end(), 1);
    const double used_full =
        static_cast<double>(config.period) * (1.0 - idle_table(full, config).idle_fraction);

    BoundaryThroughputs out;
    out.q.resize(config.n_clients);
    for (int j = 0; j < config.n_clients; ++j) {
        out.q[j] = split_weights[j] * config.reliability[j] * used_full;
        if (!(out.q[j] > 0.0 && out.q[j] < 1.0)) {
            throw std::invalid_argument("boundary_throughputs: client " + std::to_string(j + 1) +
                                        " gets q = " + std::to_string(out.q[j]) +
                                        ", outside (0,1); adjust weights");
        }
    }

    SystemConfig probe = config;
    probe.throughput = out.q;
    const FeasibilityReport report = check_feasibility(probe, tolerance);
    const std::uint32_t full_mask =
        static_cast<std::uint32_t>((std::size_t{1} << config.n_clients) - 1);
    for (std::uint32_t mask : report.tight) {
        if (mask != full_mask) out.tight_other.push_back(mask);
    }
    for (std::uint32_t mask : report.violated) {
        if (mask != full_mask) out.violated_other.push_back(mask);
    }
    return out;
}

}  // namespace debtsim
