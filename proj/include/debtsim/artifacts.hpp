#ifndef DEBTSIM_ARTIFACTS_HPP
#define DEBTSIM_ARTIFACTS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "debtsim/analysis.hpp"
#include "debtsim/engine.hpp"

namespace debtsim {

/// 17 significant digits: lossless double round-trip.
std::string format_double(double v);

/// FNV-1a 64 over the canonical config dump, hex-encoded.
std::string config_hash_hex(const nlohmann::json& canonical);

/// Write via a temp file in the same directory, then rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Trace CSV. Columns, in order:
///   t, d_1..d_N, u_1..u_N, g_1..g_N, idle, phi, M_1..M_N, scaled_d_1..scaled_d_N
std::string run_csv(const RunResult& result, const SystemConfig& config);

/// Parsed-back trace rows (the columns above).
struct CsvTrace {
    int n_clients = 0;
    std::vector<SeriesRow> rows;
};

CsvTrace parse_run_csv(const std::string& text);

/// Per-run summary: provenance (config hash, rng id), final state, LIL and
/// SSC statistics, kolmogorov extrema.
nlohmann::json run_summary_json(const RunResult& result, const SystemConfig& config,
                                const std::string& config_hash);

/// Aggregation helpers for seed sweeps.
struct Quantiles {
    double min = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, max = 0.0;
};

Quantiles quantiles(std::vector<double> values);
nlohmann::json quantiles_json(const Quantiles& q);

}  // namespace debtsim

#endif
