#ifndef DEBTSIM_SYSTEM_CONFIG_HPP
#define DEBTSIM_SYSTEM_CONFIG_HPP

#include <string>
#include <vector>

namespace debtsim {

/// One problem instance: N clients sharing frames of `period` slots, each
/// client i with per-slot delivery probability p_i, a per-frame throughput
/// requirement q_i, and a debt weight alpha_i.
///
/// Client ids are 1-based everywhere they cross a public surface; the vectors
/// below are indexed by id-1.
struct SystemConfig {
    int n_clients = 0;
    int period = 1;
    std::vector<double> reliability;   // p_i in (0, 1]
    std::vector<double> throughput;    // q_i in (0, 1)
    std::vector<double> debt_weight;   // alpha_i > 0, defaults to 1

    /// Throws std::invalid_argument on any violated invariant. q_i = 0 is
    /// rejected: clients with no requirement are not part of the model.
    void validate() const;

    /// All reliabilities equal (within exact comparison).
    bool symmetric_reliability() const;
    /// All reliabilities and all throughputs equal.
    bool symmetric() const;

    static SystemConfig make(int n_clients, int period, std::vector<double> p,
                             std::vector<double> q, std::vector<double> alpha = {});

    /// Convenience for symmetric instances.
    static SystemConfig symmetric_instance(int n_clients, int period, double p, double q);
};

}  // namespace debtsim

#endif
