#include "debtsim/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace debtsim {

namespace detail {

double convolve_geometric(std::vector<double>& mass, double p, int tau) {
    // pmf of one attempt count: p(1-p)^{k-1} for k = 1..tau
    std::vector<double> geo(tau + 1, 0.0);
    double m = p;
    for (int k = 1; k <= tau; ++k) {
        geo[k] = m;
        m *= (1.0 - p);
    }
    const double geo_tail = (p > 0.0) ? m / p : 1.0;   // (1-p)^tau

    std::vector<double> next(tau + 1, 0.0);
    double spill = 0.0;
    for (int v = 0; v <= tau; ++v) {
        if (mass[v] == 0.0) continue;
        for (int k = 1; v + k <= tau; ++k) {
            next[v + k] += mass[v] * geo[k];
        }
        const double beyond =
            (v == 0) ? geo_tail : std::pow(1.0 - p, static_cast<double>(tau - v));
        spill += mass[v] * beyond;
    }
    mass = std::move(next);
    return spill;
}

double expected_used_slots(const std::vector<double>& mass, int tau) {
    double idle_mean = 0.0;
    for (int v = 0; v < tau; ++v) {
        idle_mean += static_cast<double>(tau - v) * mass[v];
    }
    return static_cast<double>(tau) - idle_mean;
}

}  // namespace detail

namespace {

void require_clients(const std::vector<int>& ids, const SystemConfig& config) {
    for (int id : ids) {
        if (id < 1 || id > config.n_clients) {
            throw std::invalid_argument("client id " + std::to_string(id) + " out of range");
        }
    }
}

}  // namespace

double TruncatedSumPmf::total() const {
    double s = 0.0;
    for (double m : mass) s += m;
    return s + overflow;
}

TruncatedSumPmf attempt_sum_pmf(const std::vector<int>& subset, const SystemConfig& config) {
    if (subset.empty()) {
        throw std::invalid_argument("attempt_sum_pmf: subset must be non-empty");
    }
    require_clients(subset, config);

    std::vector<int> ids = subset;
    std::sort(ids.begin(), ids.end());

    TruncatedSumPmf out;
    out.tau = config.period;
    out.mass.assign(config.period + 1, 0.0);
    out.mass[0] = 1.0;   // empty sum
    out.overflow = 0.0;
    for (int id : ids) {
        out.overflow +=
            detail::convolve_geometric(out.mass, config.reliability[id - 1], config.period);
    }
    return out;
}

SubsetIdleTable idle_table(const std::vector<int>& subset, const SystemConfig& config) {
    const int tau = config.period;
    SubsetIdleTable table;
    table.subset = subset;
    std::sort(table.subset.begin(), table.subset.end());
    table.idle_pmf.assign(tau + 1, 0.0);

    if (subset.empty()) {
        // By convention the empty subset idles the whole frame.
        table.idle_pmf[tau] = 1.0;
        table.idle_fraction = 1.0;
        table.idle_variance = 0.0;
        return table;
    }

    const TruncatedSumPmf sum = attempt_sum_pmf(subset, config);
    // k idle slots <=> X = tau - k for k >= 1; k = 0 collects X >= tau.
    table.idle_pmf[0] = sum.mass[tau] + sum.overflow;
    for (int k = 1; k <= tau; ++k) {
        table.idle_pmf[k] = sum.mass[tau - k];
    }
    double mean = 0.0, second = 0.0;
    for (int k = 0; k <= tau; ++k) {
        mean += static_cast<double>(k) * table.idle_pmf[k];
        second += static_cast<double>(k) * static_cast<double>(k) * table.idle_pmf[k];
    }
    table.idle_fraction = mean / static_cast<double>(tau);
    table.idle_variance = std::max(0.0, second - mean * mean);
    return table;
}

std::vector<double> delivery_probabilities(const std::vector<int>& order,
                                           const SystemConfig& config) {
    const int n = config.n_clients;
    if (static_cast<int>(order.size()) != n) {
        throw std::invalid_argument("delivery_probabilities: order must list every client once");
    }
    std::vector<bool> seen(n, false);
    for (int id : order) {
        if (id < 1 || id > n || seen[id - 1]) {
            throw std::invalid_argument("delivery_probabilities: order is not a permutation");
        }
        seen[id - 1] = true;
    }

    // Prefix identity: sum_{m<=k} pi_{o_m}/p_{o_m} = tau (1 - I_{prefix_k}).
    // The incremental convolution walks the prefixes directly.
    const int tau = config.period;
    std::vector<double> mass(tau + 1, 0.0);
    mass[0] = 1.0;

    std::vector<double> pi(n, 0.0);
    double used_prev = 0.0;
    for (int id : order) {
        detail::convolve_geometric(mass, config.reliability[id - 1], tau);
        const double used = detail::expected_used_slots(mass, tau);
        pi[id - 1] = config.reliability[id - 1] * (used - used_prev);
        used_prev = used;
    }
    return pi;
}

DeliveryCountDistribution symmetric_delivery_distribution(const SystemConfig& config) {
    if (!config.symmetric_reliability()) {
        throw std::invalid_argument(
            "symmetric_delivery_distribution: reliabilities must all be equal");
    }
    const int n = config.n_clients;
    const int tau = config.period;
    const double p = config.reliability[0];

    // Binomial(tau, p) masses by the multiplicative recurrence.
    std::vector<double> binom(tau + 1, 0.0);
    if (p >= 1.0) {
        binom[tau] = 1.0;
    } else {
        double b = std::pow(1.0 - p, static_cast<double>(tau));
        const double ratio = p / (1.0 - p);
        for (int x = 0; x <= tau; ++x) {
            binom[x] = b;
            b *= ratio * static_cast<double>(tau - x) / static_cast<double>(x + 1);
        }
    }

    // y = min(N, Binomial(tau, p)): successes beyond the N-th would land in
    // slots the access point leaves idle anyway.
    DeliveryCountDistribution dist;
    dist.pmf.assign(n + 1, 0.0);
    for (int x = 0; x <= tau; ++x) {
        dist.pmf[std::min(x, n)] += binom[x];
    }
    double mean = 0.0, second = 0.0;
    for (int y = 0; y <= n; ++y) {
        mean += static_cast<double>(y) * dist.pmf[y];
        second += static_cast<double>(y) * static_cast<double>(y) * dist.pmf[y];
    }
    dist.mean = mean;
    dist.variance = std::max(0.0, second - mean * mean);
    return dist;
}

double sigma_p_tau(const SystemConfig& config) {
    const DeliveryCountDistribution dist = symmetric_delivery_distribution(config);
    return std::sqrt(dist.variance) / config.reliability[0];
}

DiffusionConstants diffusion_constants(const SystemConfig& config) {
    DiffusionConstants k;
    k.v.resize(config.n_clients);
    k.c.resize(config.n_clients);
    k.sqrt_c.resize(config.n_clients);
    for (int j = 0; j < config.n_clients; ++j) {
        const double p = config.reliability[j];
        const double q = config.throughput[j];
        k.v[j] = (1.0 - p) / p;
        k.c[j] = q * (1.0 - p) / (p * p);
        k.sqrt_c[j] = std::sqrt(k.c[j]);
    }
    return k;
}

}  // namespace debtsim
