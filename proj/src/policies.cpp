#include "debtsim/policies.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace debtsim {

PolicySpec PolicySpec::mwdf(TieBreak tb) { return PolicySpec{PolicyKind::Mwdf, tb, {}, {}}; }
PolicySpec PolicySpec::mdf(TieBreak tb) { return PolicySpec{PolicyKind::Mdf, tb, {}, {}}; }

PolicySpec PolicySpec::weighted(std::vector<double> alpha, TieBreak tb) {
    return PolicySpec{PolicyKind::WeightedDebt, tb, std::move(alpha), {}};
}

PolicySpec PolicySpec::round_robin() {
    return PolicySpec{PolicyKind::RoundRobin, TieBreak::LowestId, {}, {}};
}

PolicySpec PolicySpec::uniform_random() {
    return PolicySpec{PolicyKind::UniformRandom, TieBreak::LowestId, {}, {}};
}

PolicySpec PolicySpec::fixed(std::vector<int> order) {
    return PolicySpec{PolicyKind::FixedOrder, TieBreak::LowestId, {}, std::move(order)};
}

std::string PolicySpec::name() const {
    switch (kind) {
        case PolicyKind::WeightedDebt: return "weighted_debt";
        case PolicyKind::Mwdf: return "mwdf";
        case PolicyKind::Mdf: return "mdf";
        case PolicyKind::RoundRobin: return "round_robin";
        case PolicyKind::UniformRandom: return "uniform_random";
        case PolicyKind::FixedOrder: return "fixed_order";
    }
    return "unknown";
}

void PolicySpec::validate(const SystemConfig& config) const {
    if (kind == PolicyKind::WeightedDebt) {
        if (static_cast<int>(alpha.size()) != config.n_clients) {
            throw std::invalid_argument("weighted_debt policy needs one alpha per client");
        }
        for (double a : alpha) {
            if (!(a > 0.0)) throw std::invalid_argument("policy alpha must be positive");
        }
    }
    if (kind == PolicyKind::FixedOrder) {
        if (static_cast<int>(fixed_order.size()) != config.n_clients) {
            throw std::invalid_argument("fixed_order policy needs a full permutation");
        }
        std::vector<bool> seen(config.n_clients, false);
        for (int id : fixed_order) {
            if (id < 1 || id > config.n_clients || seen[id - 1]) {
                throw std::invalid_argument("fixed_order is not a permutation of client ids");
            }
            seen[id - 1] = true;
        }
    }
}

namespace {

// Sort ids by debts[j]/alpha[j] descending; alpha == nullptr means all ones.
void sort_by_weighted_debt(const std::vector<double>& debts, const double* alpha,
                           TieBreak tie_break, Xoshiro256StarStar& rng,
                           std::vector<int>& order) {
    const int n = static_cast<int>(debts.size());
    order.resize(n);
    std::iota(order.begin(), order.end(), 1);

    std::vector<std::uint64_t> tie_key;
    if (tie_break == TieBreak::Random) {
        tie_key.resize(n);
        for (auto& k : tie_key) k = rng.next();
    }

    auto weight = [&](int id) {
        const double d = debts[id - 1];
        return alpha ? d / alpha[id - 1] : d;
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double ka = weight(a), kb = weight(b);
        if (ka != kb) return ka > kb;
        if (tie_break == TieBreak::Random && tie_key[a - 1] != tie_key[b - 1]) {
            return tie_key[a - 1] < tie_key[b - 1];
        }
        return a < b;
    });
}

}  // namespace

void priority_order_into(const PolicySpec& policy, const std::vector<double>& debts,
                         std::int64_t frame_index, const SystemConfig& config,
                         Xoshiro256StarStar& rng, std::vector<int>& out) {
    const int n = config.n_clients;
    switch (policy.kind) {
        case PolicyKind::Mwdf:
            sort_by_weighted_debt(debts, config.reliability.data(), policy.tie_break, rng, out);
            return;
        case PolicyKind::Mdf:
            sort_by_weighted_debt(debts, nullptr, policy.tie_break, rng, out);
            return;
        case PolicyKind::WeightedDebt:
            sort_by_weighted_debt(debts, policy.alpha.data(), policy.tie_break, rng, out);
            return;
        case PolicyKind::RoundRobin: {
            out.resize(n);
            const int shift = static_cast<int>(frame_index % n);
            for (int i = 0; i < n; ++i) out[i] = (shift + i) % n + 1;
            return;
        }
        case PolicyKind::UniformRandom: {
            out.resize(n);
            std::iota(out.begin(), out.end(), 1);
            // Fisher-Yates with our own draws; std::shuffle is not
            // reproducible across standard library implementations.
            for (int i = n - 1; i > 0; --i) {
                const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i + 1)));
                std::swap(out[i], out[j]);
            }
            return;
        }
        case PolicyKind::FixedOrder:
            out = policy.fixed_order;
            return;
    }
    throw std::logic_error("priority_order: unhandled policy kind");
}

std::vector<int> priority_order(const PolicySpec& policy, const DebtState& state,
                                const SystemConfig& config, Xoshiro256StarStar& rng) {
    std::vector<int> order;
    priority_order_into(policy, state.debts, state.frame_index, config, rng, order);
    return order;
}

}  // namespace debtsim
