#include "debtsim/experiment.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "debtsim/engine.hpp"
#include "debtsim/feasibility.hpp"

namespace debtsim {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw ConfigError(where + ": unknown key \"" + item.key() + "\"");
        }
    }
}

const json& require(const json& obj, const std::string& where, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(where + ": missing required key \"" + key + "\"");
    return *it;
}

double as_double(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where + ": expected a number");
    return v.get<double>();
}

std::int64_t as_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
    return v.get<std::int64_t>();
}

std::vector<double> as_double_vector(const json& v, const std::string& where) {
    if (!v.is_array()) throw ConfigError(where + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(as_double(v[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<int> as_int_vector(const json& v, const std::string& where) {
    if (!v.is_array()) throw ConfigError(where + ": expected an array of integers");
    std::vector<int> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(static_cast<int>(as_int(v[i], where + "[" + std::to_string(i) + "]")));
    }
    return out;
}

TieBreak parse_tie_break(const json& v, const std::string& where) {
    const std::string s = v.is_string() ? v.get<std::string>() : "";
    if (s == "lowest_id") return TieBreak::LowestId;
    if (s == "random") return TieBreak::Random;
    throw ConfigError(where + ": tie_break must be \"lowest_id\" or \"random\"");
}

PolicySpec parse_policy(const json& obj, const std::string& where) {
    check_keys(obj, where, {"kind", "tie_break", "alpha", "order"});
    const json& kind_value = require(obj, where, "kind");
    if (!kind_value.is_string()) throw ConfigError(where + ": kind must be a string");
    const std::string kind = kind_value.get<std::string>();

    PolicySpec spec;
    if (kind == "mwdf") {
        spec.kind = PolicyKind::Mwdf;
    } else if (kind == "mdf") {
        spec.kind = PolicyKind::Mdf;
    } else if (kind == "weighted_debt") {
        spec.kind = PolicyKind::WeightedDebt;
        spec.alpha = as_double_vector(require(obj, where, "alpha"), where + ".alpha");
    } else if (kind == "round_robin") {
        spec.kind = PolicyKind::RoundRobin;
    } else if (kind == "uniform_random") {
        spec.kind = PolicyKind::UniformRandom;
    } else if (kind == "fixed_order") {
        spec.kind = PolicyKind::FixedOrder;
        spec.fixed_order = as_int_vector(require(obj, where, "order"), where + ".order");
    } else {
        throw ConfigError(where + ": unknown policy kind \"" + kind + "\"");
    }
    if (obj.contains("alpha") && spec.kind != PolicyKind::WeightedDebt) {
        throw ConfigError(where + ": alpha is only valid for weighted_debt");
    }
    if (obj.contains("order") && spec.kind != PolicyKind::FixedOrder) {
        throw ConfigError(where + ": order is only valid for fixed_order");
    }
    if (obj.contains("tie_break")) {
        spec.tie_break = parse_tie_break(obj["tie_break"], where);
    }
    return spec;
}

json policy_to_json(const PolicySpec& spec) {
    json j;
    j["kind"] = spec.name();
    j["tie_break"] = spec.tie_break == TieBreak::Random ? "random" : "lowest_id";
    if (spec.kind == PolicyKind::WeightedDebt) j["alpha"] = spec.alpha;
    if (spec.kind == PolicyKind::FixedOrder) j["order"] = spec.fixed_order;
    return j;
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& root) {
    check_keys(root, "config", {"system", "policies", "run", "output"});

    ExperimentConfig cfg;

    // system
    const json& sys = require(root, "config", "system");
    check_keys(sys, "system",
               {"n_clients", "period", "reliability", "throughput", "boundary_split",
                "debt_weight"});
    cfg.system.n_clients = static_cast<int>(as_int(require(sys, "system", "n_clients"),
                                                   "system.n_clients"));
    cfg.system.period = static_cast<int>(as_int(require(sys, "system", "period"),
                                                "system.period"));
    cfg.system.reliability =
        as_double_vector(require(sys, "system", "reliability"), "system.reliability");

    const bool has_q = sys.contains("throughput");
    const bool has_split = sys.contains("boundary_split");
    if (has_q == has_split) {
        throw ConfigError("system: supply exactly one of throughput / boundary_split");
    }
    if (sys.contains("debt_weight")) {
        cfg.system.debt_weight = as_double_vector(sys["debt_weight"], "system.debt_weight");
    } else {
        cfg.system.debt_weight.assign(cfg.system.n_clients, 1.0);
    }
    if (has_split) {
        cfg.q_from_boundary_split = true;
        cfg.boundary_split = as_double_vector(sys["boundary_split"], "system.boundary_split");
        try {
            SystemConfig probe = cfg.system;
            probe.throughput.assign(cfg.system.n_clients, 0.5);   // placeholder, ignored
            cfg.system.throughput = boundary_throughputs(probe, cfg.boundary_split).q;
        } catch (const std::exception& e) {
            throw ConfigError(std::string("system.boundary_split: ") + e.what());
        }
    } else {
        cfg.system.throughput = as_double_vector(sys["throughput"], "system.throughput");
    }
    try {
        cfg.system.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("system: ") + e.what());
    }

    // policies
    const json& pols = require(root, "config", "policies");
    if (!pols.is_array() || pols.empty()) {
        throw ConfigError("policies: expected a non-empty array");
    }
    for (std::size_t i = 0; i < pols.size(); ++i) {
        const std::string where = "policies[" + std::to_string(i) + "]";
        PolicySpec spec = parse_policy(pols[i], where);
        try {
            spec.validate(cfg.system);
        } catch (const std::exception& e) {
            throw ConfigError(where + ": " + e.what());
        }
        cfg.policies.push_back(std::move(spec));
    }

    // run
    const json& run = require(root, "config", "run");
    check_keys(run, "run",
               {"frames", "seeds", "seed_count", "t_min", "record_stride", "initial_debts"});
    cfg.frames = as_int(require(run, "run", "frames"), "run.frames");
    const bool has_seeds = run.contains("seeds");
    const bool has_count = run.contains("seed_count");
    if (has_seeds == has_count) {
        throw ConfigError("run: supply exactly one of seeds / seed_count");
    }
    if (has_seeds) {
        const json& seeds = run["seeds"];
        if (!seeds.is_array() || seeds.empty()) {
            throw ConfigError("run.seeds: expected a non-empty array");
        }
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            cfg.seeds.push_back(static_cast<std::uint64_t>(
                as_int(seeds[i], "run.seeds[" + std::to_string(i) + "]")));
        }
    } else {
        const std::int64_t count = as_int(run["seed_count"], "run.seed_count");
        if (count < 1) throw ConfigError("run.seed_count: must be >= 1");
        for (std::int64_t s = 1; s <= count; ++s) {
            cfg.seeds.push_back(static_cast<std::uint64_t>(s));
        }
    }
    if (run.contains("t_min")) cfg.t_min = as_int(run["t_min"], "run.t_min");
    if (run.contains("record_stride")) {
        cfg.record_stride = as_int(run["record_stride"], "run.record_stride");
    }
    if (run.contains("initial_debts")) {
        cfg.initial_debts = as_double_vector(run["initial_debts"], "run.initial_debts");
    }

    // output
    if (root.contains("output")) {
        const json& out = root["output"];
        check_keys(out, "output", {"dir"});
        if (out.contains("dir")) {
            if (!out["dir"].is_string()) throw ConfigError("output.dir: expected a string");
            cfg.out_dir = out["dir"].get<std::string>();
        }
    }

    // Validate run parameters through the engine's own checks.
    try {
        RunConfig probe;
        probe.system = cfg.system;
        probe.policy = cfg.policies.front();
        probe.frames = cfg.frames;
        probe.seed = cfg.seeds.front();
        probe.record_stride = cfg.record_stride;
        probe.t_min = cfg.t_min;
        probe.initial_debts = cfg.initial_debts;
        probe.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("run: ") + e.what());
    }

    // Canonical form for hashing: fully resolved values, sorted keys.
    json canon;
    canon["system"]["n_clients"] = cfg.system.n_clients;
    canon["system"]["period"] = cfg.system.period;
    canon["system"]["reliability"] = cfg.system.reliability;
    canon["system"]["throughput"] = cfg.system.throughput;
    canon["system"]["debt_weight"] = cfg.system.debt_weight;
    canon["policies"] = json::array();
    for (const PolicySpec& p : cfg.policies) canon["policies"].push_back(policy_to_json(p));
    canon["run"]["frames"] = cfg.frames;
    canon["run"]["seeds"] = cfg.seeds;
    canon["run"]["t_min"] = cfg.t_min;
    canon["run"]["record_stride"] = cfg.record_stride;
    canon["run"]["initial_debts"] = cfg.initial_debts;
    cfg.canonical = std::move(canon);
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        // nlohmann reports the byte offset; surface its message verbatim.
        throw ConfigError(path + ": " + e.what());
    }
    return parse_experiment_config(root);
}

std::vector<std::string> policy_artifact_names(const std::vector<PolicySpec>& policies) {
    std::vector<std::string> names;
    std::set<std::string> used;
    for (const PolicySpec& p : policies) {
        std::string base = p.name();
        std::string name = base;
        int k = 2;
        while (used.count(name)) {
            name = base + "-" + std::to_string(k++);
        }
        used.insert(name);
        names.push_back(name);
    }
    return names;
}

PolicySpec parse_policy_name(const std::string& text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    if (kind == "mwdf") return PolicySpec::mwdf();
    if (kind == "mdf") return PolicySpec::mdf();
    if (kind == "round_robin") return PolicySpec::round_robin();
    if (kind == "uniform_random") return PolicySpec::uniform_random();
    if (kind == "fixed_order") {
        if (colon == std::string::npos) {
            throw ConfigError("fixed_order override needs an order, e.g. fixed_order:2,1");
        }
        std::vector<int> order;
        std::stringstream ss(text.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                order.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw ConfigError("fixed_order override: bad client id \"" + tok + "\"");
            }
        }
        return PolicySpec::fixed(order);
    }
    throw ConfigError("unknown policy override \"" + text + "\"");
}

}  // namespace debtsim
