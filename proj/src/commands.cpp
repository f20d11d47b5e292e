#include "debtsim/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "debtsim/analysis.hpp"
#include "debtsim/artifacts.hpp"
#include "debtsim/engine.hpp"
#include "debtsim/errors.hpp"
#include "debtsim/experiment.hpp"
#include "debtsim/feasibility.hpp"

namespace debtsim {

namespace {

using nlohmann::json;

ExperimentConfig load_with_overrides(const CommandOptions& opts) {
    ExperimentConfig cfg = load_experiment_config(opts.config_path);
    if (opts.frames) cfg.frames = *opts.frames;
    if (!opts.seeds.empty()) cfg.seeds = opts.seeds;
    if (opts.t_min) cfg.t_min = *opts.t_min;
    if (opts.record_stride) cfg.record_stride = *opts.record_stride;
    if (opts.policy) {
        PolicySpec spec = parse_policy_name(*opts.policy);
        spec.validate(cfg.system);
        cfg.policies = {spec};
    }
    if (!opts.out_dir.empty()) {
        cfg.out_dir = opts.out_dir;
    } else if (cfg.out_dir.empty()) {
        const char* root = std::getenv("DEBTSIM_OUT_ROOT");
        cfg.out_dir = root ? root : ".";
    }

    // Re-apply canonicalization after overrides.
    cfg.canonical["run"]["frames"] = cfg.frames;
    cfg.canonical["run"]["seeds"] = cfg.seeds;
    cfg.canonical["run"]["t_min"] = cfg.t_min;
    cfg.canonical["run"]["record_stride"] = cfg.record_stride;
    return cfg;
}

RunConfig make_run_config(const ExperimentConfig& cfg, const PolicySpec& policy,
                          std::uint64_t seed) {
    RunConfig rc;
    rc.system = cfg.system;
    rc.policy = policy;
    rc.frames = cfg.frames;
    rc.seed = seed;
    rc.record_stride = cfg.record_stride;
    rc.t_min = cfg.t_min;
    rc.initial_debts = cfg.initial_debts;
    rc.validate();
    return rc;
}

struct TaskOutcome {
    bool ok = false;
    std::string error;
    RunResult result;
};

/// Run every (policy, seed) pair, bounded by the hardware thread count.
/// Results come back indexed [policy][seed] regardless of completion order.
std::vector<std::vector<TaskOutcome>> run_all(const ExperimentConfig& cfg) {
    const std::size_t n_pol = cfg.policies.size();
    const std::size_t n_seed = cfg.seeds.size();
    std::vector<std::vector<TaskOutcome>> outcomes(n_pol, std::vector<TaskOutcome>(n_seed));

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::pair<std::size_t, std::size_t>> tasks;
    tasks.reserve(n_pol * n_seed);
    for (std::size_t p = 0; p < n_pol; ++p) {
        for (std::size_t s = 0; s < n_seed; ++s) tasks.emplace_back(p, s);
    }

    std::size_t next = 0;
    while (next < tasks.size()) {
        const std::size_t batch = std::min<std::size_t>(hw, tasks.size() - next);
        std::vector<std::future<void>> futures;
        futures.reserve(batch);
        for (std::size_t b = 0; b < batch; ++b) {
            const auto [p, s] = tasks[next + b];
            futures.push_back(std::async(std::launch::async, [&cfg, &outcomes, p, s] {
                TaskOutcome& slot = outcomes[p][s];
                try {
                    slot.result = run(make_run_config(cfg, cfg.policies[p], cfg.seeds[s]));
                    slot.ok = true;
                } catch (const std::exception& e) {
                    slot.error = e.what();
                }
            }));
        }
        for (auto& f : futures) f.get();
        next += batch;
    }
    return outcomes;
}

json subset_json(std::uint32_t mask, double slack) {
    json j;
    j["mask"] = mask;
    j["clients"] = mask_clients(mask);
    j["slack"] = slack;
    return j;
}

}  // namespace

int cmd_feasibility(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    ExperimentConfig cfg;
    try {
        cfg = load_experiment_config(opts.config_path);
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    }

    FeasibilityReport report;
    try {
        report = check_feasibility(cfg.system);
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    json j;
    j["schema"] = "debtsim-feasibility-v1";
    j["config_hash"] = config_hash_hex(cfg.canonical);
    j["feasible"] = report.feasible;
    j["tolerance"] = report.tolerance;
    json table = json::array();
    for (std::uint32_t mask = 1; mask < report.slack.size(); ++mask) {
        table.push_back(subset_json(mask, report.slack[mask]));
    }
    j["subsets"] = table;
    json tight = json::array();
    for (std::uint32_t mask : report.tight) tight.push_back(subset_json(mask, report.slack[mask]));
    j["tight_subsets"] = tight;
    json violated = json::array();
    for (std::uint32_t mask : report.violated) {
        violated.push_back(subset_json(mask, report.slack[mask]));
    }
    j["violated_subsets"] = violated;
    out << j.dump(2) << "\n";
    return report.feasible ? kExitOk : kExitInfeasible;
}

int cmd_simulate(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    ExperimentConfig cfg;
    try {
        cfg = load_with_overrides(opts);
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    }

    const std::filesystem::path dir(cfg.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec && !std::filesystem::is_directory(dir)) {
        err << "cannot create output directory " << dir.string() << ": " << ec.message() << "\n";
        return kExitUsage;
    }

    const std::string hash = config_hash_hex(cfg.canonical);
    const std::vector<std::string> names = policy_artifact_names(cfg.policies);
    const auto outcomes = run_all(cfg);

    bool any_failed = false;
    for (std::size_t p = 0; p < cfg.policies.size(); ++p) {
        for (std::size_t s = 0; s < cfg.seeds.size(); ++s) {
            const TaskOutcome& task = outcomes[p][s];
            const std::string stem = names[p] + "-" + std::to_string(cfg.seeds[s]);
            if (!task.ok) {
                err << stem << ": " << task.error << "\n";
                any_failed = true;
                continue;
            }
            try {
                write_atomic(dir / (stem + ".csv"), run_csv(task.result, cfg.system));
                write_atomic(dir / (stem + ".json"),
                             run_summary_json(task.result, cfg.system, hash).dump(2) + "\n");
            } catch (const std::exception& e) {
                err << stem << ": " << e.what() << "\n";
                any_failed = true;
                continue;
            }
            out << "wrote " << (dir / (stem + ".csv")).string() << "\n";
        }
    }
    return any_failed ? kExitUsage : kExitOk;
}

int cmd_sweep(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    ExperimentConfig cfg;
    try {
        cfg = load_with_overrides(opts);
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    }

    const std::filesystem::path dir(cfg.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec && !std::filesystem::is_directory(dir)) {
        err << "cannot create output directory " << dir.string() << ": " << ec.message() << "\n";
        return kExitUsage;
    }

    const std::string hash = config_hash_hex(cfg.canonical);
    const std::vector<std::string> names = policy_artifact_names(cfg.policies);
    const auto outcomes = run_all(cfg);

    json j;
    j["schema"] = "debtsim-sweep-v1";
    j["config_hash"] = hash;
    j["rng_algorithm"] = Xoshiro256StarStar::kAlgorithmId;
    j["frames"] = cfg.frames;
    j["t_min"] = cfg.t_min;
    j["seeds"] = cfg.seeds;

    std::size_t total_ok = 0;
    json policies = json::object();
    json cost_table = json::object();
    for (std::size_t p = 0; p < cfg.policies.size(); ++p) {
        json pj;
        std::vector<const RunResult*> ok_runs;
        json per_seed = json::array();
        json failures = json::array();
        for (std::size_t s = 0; s < cfg.seeds.size(); ++s) {
            const TaskOutcome& task = outcomes[p][s];
            if (!task.ok) {
                json f;
                f["seed"] = cfg.seeds[s];
                f["error"] = task.error;
                failures.push_back(f);
                err << names[p] << "-" << cfg.seeds[s] << ": " << task.error << "\n";
                continue;
            }
            ok_runs.push_back(&task.result);
            per_seed.push_back(run_summary_json(task.result, cfg.system, hash));
        }
        total_ok += ok_runs.size();
        pj["per_seed"] = per_seed;
        pj["failures"] = failures;

        if (!ok_runs.empty()) {
            const int n = cfg.system.n_clients;
            json agg;
            for (int jx = 0; jx < n; ++jx) {
                std::vector<double> maxd, maxm;
                for (const RunResult* r : ok_runs) {
                    maxd.push_back(r->max_scaled_debt[jx]);
                    maxm.push_back(r->max_scaled_martingale[jx]);
                }
                agg["max_scaled_debt"].push_back(quantiles_json(quantiles(maxd)));
                agg["max_scaled_martingale"].push_back(quantiles_json(quantiles(maxm)));
            }
            std::vector<double> kmax, kmin, ssc_final, ssc_slope;
            for (const RunResult* r : ok_runs) {
                kmax.push_back(r->max_scaled_weighted_sum);
                kmin.push_back(r->min_scaled_weighted_sum);
                if (!r->ssc_series.empty()) ssc_final.push_back(r->ssc_series.back().scaled);
                const SscStats ssc = ssc_stats(*r, cfg.system);
                if (ssc.slope_defined) ssc_slope.push_back(ssc.trend_slope);
            }
            agg["kolmogorov_max"] = quantiles_json(quantiles(kmax));
            agg["kolmogorov_min"] = quantiles_json(quantiles(kmin));
            if (!ssc_final.empty()) agg["ssc_final"] = quantiles_json(quantiles(ssc_final));
            if (!ssc_slope.empty()) agg["ssc_trend_slope"] = quantiles_json(quantiles(ssc_slope));
            pj["aggregate"] = agg;

            // Conditional drift: meaningful for debt-ordered policies on two
            // clients, measured from an inflated start on each side.
            const bool debt_policy = cfg.policies[p].kind == PolicyKind::Mwdf ||
                                     cfg.policies[p].kind == PolicyKind::Mdf ||
                                     cfg.policies[p].kind == PolicyKind::WeightedDebt;
            if (cfg.system.n_clients == 2 && debt_policy) {
                const double kappa = default_kappa(cfg.system);
                json drifts = json::array();
                for (int side = 1; side <= 2; ++side) {
                    const double predicted = predicted_drift(cfg.system, side);
                    const double gap =
                        kappa + 2000.0 * std::max(std::abs(predicted), 0.1);
                    const DriftEstimate est =
                        drift_estimate(cfg.system, cfg.policies[p], kappa,
                                       std::min<std::int64_t>(cfg.frames, 1000000),
                                       cfg.seeds.front(), side, gap);
                    json d;
                    d["high_side"] = side;
                    d["kappa"] = est.kappa;
                    d["events"] = est.events;
                    d["conclusive"] = est.conclusive;
                    d["empirical_mean"] = est.conclusive ? json(est.empirical_mean) : json(nullptr);
                    d["predicted"] = est.predicted;
                    drifts.push_back(d);
                }
                pj["drift"] = drifts;
            }

            if (cfg.system.symmetric()) {
                std::vector<RunResult> runs_copy;
                runs_copy.reserve(ok_runs.size());
                for (const RunResult* r : ok_runs) runs_copy.push_back(*r);
                const PolicyCost cost = policy_cost(runs_copy, cfg.system);
                json cj;
                cj["v"] = cost.v;
                cj["w"] = cost.w;
                cj["cost"] = cost.cost;
                cj["sum_v"] = cost.sum_v;
                cj["floor"] = cost.floor_value;
                pj["policy_cost"] = cj;
                cost_table[names[p]] = cost.cost;
            }
        }
        policies[names[p]] = pj;
    }
    j["policies"] = policies;
    if (!cost_table.empty()) {
        json cmp;
        cmp["costs"] = cost_table;
        cmp["floor"] = sigma_p_tau(cfg.system) / cfg.system.n_clients;
        j["cost_comparison"] = cmp;
    }

    if (total_ok == 0) {
        err << "all runs failed\n";
        return kExitUsage;
    }
    try {
        write_atomic(dir / "sweep.json", j.dump(2) + "\n");
    } catch (const std::exception& e) {
        err << "cannot write sweep.json: " << e.what() << "\n";
        return kExitUsage;
    }
    out << "wrote " << (dir / "sweep.json").string() << "\n";
    return kExitOk;
}

int cmd_analyze(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    ExperimentConfig cfg;
    try {
        cfg = load_experiment_config(opts.config_path);
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    }
    const std::int64_t t_min = opts.t_min ? *opts.t_min : cfg.t_min;

    std::ifstream in(opts.csv_path, std::ios::binary);
    if (!in) {
        err << "cannot open CSV: " << opts.csv_path << "\n";
        return kExitUsage;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    CsvTrace trace;
    try {
        trace = parse_run_csv(buffer.str());
    } catch (const std::exception& e) {
        err << "CSV error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (trace.n_clients != cfg.system.n_clients) {
        err << "CSV has " << trace.n_clients << " clients, config has "
            << cfg.system.n_clients << "\n";
        return kExitUsage;
    }

    // Extrema recomputed from whatever resolution the CSV carries.
    const int n = trace.n_clients;
    std::vector<double> maxd(n, -std::numeric_limits<double>::infinity());
    std::vector<double> maxm(n, -std::numeric_limits<double>::infinity());
    double kmax = -std::numeric_limits<double>::infinity();
    double kmin = std::numeric_limits<double>::infinity();
    std::int64_t used_rows = 0;
    for (const SeriesRow& row : trace.rows) {
        if (row.t < t_min) continue;
        ++used_rows;
        double wsum = 0.0;
        for (int jx = 0; jx < n; ++jx) {
            maxd[jx] = std::max(maxd[jx], row.debts[jx] / row.phi_value);
            maxm[jx] = std::max(maxm[jx], row.martingale[jx] / row.phi_value);
            wsum += row.debts[jx] / cfg.system.reliability[jx];
        }
        kmax = std::max(kmax, wsum / row.phi_value);
        kmin = std::min(kmin, wsum / row.phi_value);
    }
    if (used_rows == 0) {
        err << "no CSV rows at t >= " << t_min << "\n";
        return kExitUsage;
    }

    json j;
    j["schema"] = "debtsim-analyze-v1";
    j["config_hash"] = config_hash_hex(cfg.canonical);
    j["rng_algorithm"] = Xoshiro256StarStar::kAlgorithmId;
    j["csv"] = opts.csv_path;
    j["t_min"] = t_min;
    j["rows_used"] = used_rows;
    j["note"] = "extrema limited to the rows recorded in the CSV";
    j["max_scaled_debt"] = maxd;
    j["max_scaled_martingale"] = maxm;
    j["kolmogorov_max"] = kmax;
    j["kolmogorov_min"] = kmin;
    out << j.dump(2) << "\n";
    return kExitOk;
}

}  // namespace debtsim
