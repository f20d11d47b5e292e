#include "debtsim/system_config.hpp"

#include <stdexcept>
#include <string>

namespace debtsim {

namespace {

void check_size(const std::vector<double>& v, int n, const char* what) {
    if (static_cast<int>(v.size()) != n) {
        throw std::invalid_argument(std::string(what) + " must have one entry per client");
    }
}

}  // namespace

void SystemConfig::validate() const {
    if (n_clients < 1) throw std::invalid_argument("n_clients must be >= 1");
    if (period < 1) throw std::invalid_argument("period must be >= 1");
    check_size(reliability, n_clients, "reliability");
    check_size(throughput, n_clients, "throughput");
    check_size(debt_weight, n_clients, "debt_weight");
    for (int i = 0; i < n_clients; ++i) {
        const std::string id = "client " + std::to_string(i + 1);
        if (!(reliability[i] > 0.0 && reliability[i] <= 1.0)) {
            throw std::invalid_argument(id + ": reliability must lie in (0,1]");
        }
        if (!(throughput[i] > 0.0 && throughput[i] < 1.0)) {
            throw std::invalid_argument(id + ": throughput must lie strictly in (0,1)");
        }
        if (!(debt_weight[i] > 0.0)) {
            throw std::invalid_argument(id + ": debt weight must be positive");
        }
    }
}

bool SystemConfig::symmetric_reliability() const {
    for (int i = 1; i < n_clients; ++i) {
        if (reliability[i] != reliability[0]) return false;
    }
    return true;
}

bool SystemConfig::symmetric() const {
    if (!symmetric_reliability()) return false;
    for (int i = 1; i < n_clients; ++i) {
        if (throughput[i] != throughput[0]) return false;
    }
    return true;
}

SystemConfig SystemConfig::make(int n_clients, int period, std::vector<double> p,
                                std::vector<double> q, std::vector<double> alpha) {
    SystemConfig cfg;
    cfg.n_clients = n_clients;
    cfg.period = period;
    cfg.reliability = std::move(p);
    cfg.throughput = std::move(q);
    cfg.debt_weight = alpha.empty() ? std::vector<double>(n_clients, 1.0) : std::move(alpha);
    cfg.validate();
    return cfg;
}

SystemConfig SystemConfig::symmetric_instance(int n_clients, int period, double p, double q) {
    return make(n_clients, period, std::vector<double>(n_clients, p),
                std::vector<double>(n_clients, q));
}

}  // namespace debtsim
