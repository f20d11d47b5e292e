#include "debtsim/artifacts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace debtsim {

namespace {

using nlohmann::json;

json double_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

json double_vector_json(const std::vector<double>& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(x);
    return arr;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string config_hash_hex(const json& canonical) {
    const std::string dump = canonical.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string run_csv(const RunResult& result, const SystemConfig& config) {
    const int n = config.n_clients;
    std::string out;
    out.reserve(result.series.size() * (40 + 80 * static_cast<std::size_t>(n)));

    // header
    out += "t";
    for (int j = 1; j <= n; ++j) out += ",d_" + std::to_string(j);
    for (int j = 1; j <= n; ++j) out += ",u_" + std::to_string(j);
    for (int j = 1; j <= n; ++j) out += ",g_" + std::to_string(j);
    out += ",idle,phi";
    for (int j = 1; j <= n; ++j) out += ",M_" + std::to_string(j);
    for (int j = 1; j <= n; ++j) out += ",scaled_d_" + std::to_string(j);
    out += "\n";

    for (const SeriesRow& row : result.series) {
        out += std::to_string(row.t);
        for (int j = 0; j < n; ++j) out += "," + format_double(row.debts[j]);
        for (int j = 0; j < n; ++j) out += "," + std::to_string(row.attempts[j]);
        for (int j = 0; j < n; ++j) out += "," + std::to_string(static_cast<int>(row.delivered[j]));
        out += "," + std::to_string(row.idle_slots);
        out += "," + format_double(row.phi_value);
        for (int j = 0; j < n; ++j) out += "," + format_double(row.martingale[j]);
        for (int j = 0; j < n; ++j) out += "," + format_double(row.scaled_debts[j]);
        out += "\n";
    }
    return out;
}

CsvTrace parse_run_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV");

    // infer N from the d_ columns
    int n = 0;
    {
        std::istringstream header(line);
        std::string col;
        while (std::getline(header, col, ',')) {
            if (col.rfind("d_", 0) == 0) ++n;
        }
        if (n == 0) throw std::runtime_error("CSV header has no d_ columns");
    }

    CsvTrace trace;
    trace.n_clients = n;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        const std::size_t expected = 1 + 4 * static_cast<std::size_t>(n) + 2;
        if (fields.size() != expected) {
            throw std::runtime_error("CSV row has " + std::to_string(fields.size()) +
                                     " fields, expected " + std::to_string(expected));
        }
        SeriesRow row;
        std::size_t k = 0;
        row.t = std::stoll(fields[k++]);
        row.debts.resize(n);
        for (int j = 0; j < n; ++j) row.debts[j] = std::strtod(fields[k++].c_str(), nullptr);
        row.attempts.resize(n);
        for (int j = 0; j < n; ++j) row.attempts[j] = std::stoi(fields[k++]);
        row.delivered.resize(n);
        for (int j = 0; j < n; ++j) {
            row.delivered[j] = static_cast<std::uint8_t>(std::stoi(fields[k++]));
        }
        row.idle_slots = std::stoi(fields[k++]);
        row.phi_value = std::strtod(fields[k++].c_str(), nullptr);
        row.martingale.resize(n);
        for (int j = 0; j < n; ++j) row.martingale[j] = std::strtod(fields[k++].c_str(), nullptr);
        row.scaled_debts.resize(n);
        for (int j = 0; j < n; ++j) {
            row.scaled_debts[j] = std::strtod(fields[k++].c_str(), nullptr);
        }
        trace.rows.push_back(std::move(row));
    }
    return trace;
}

nlohmann::json run_summary_json(const RunResult& result, const SystemConfig& config,
                                const std::string& config_hash) {
    const LilStats lil = lil_stats(result, config, result.t_min);
    const SscStats ssc = ssc_stats(result, config);
    const KolmogorovStats kol = kolmogorov_sum_stats(result, config);

    json j;
    j["schema"] = "debtsim-run-summary-v1";
    j["config_hash"] = config_hash;
    j["rng_algorithm"] = result.rng_algorithm;
    j["policy"] = result.policy_name;
    j["seed"] = result.seed;
    j["frames"] = result.frames;
    j["t_min"] = result.t_min;
    j["record_stride"] = result.record_stride;
    j["wall_seconds"] = result.wall_seconds;

    json final_state;
    final_state["frame_index"] = result.final_state.frame_index;
    final_state["debts"] = double_vector_json(result.final_state.debts);
    final_state["delivered"] = result.final_state.delivered;
    j["final_state"] = final_state;

    j["attempt_totals"] = result.attempt_totals;
    j["idle_total"] = result.idle_total;
    j["identity_residual_max"] = result.max_identity_residual;

    json lil_json;
    lil_json["max_scaled_debt"] = double_vector_json(lil.max_scaled_debt);
    lil_json["max_scaled_martingale"] = double_vector_json(lil.max_scaled_martingale);
    lil_json["bound_kind"] = to_string(lil.bound_kind);
    lil_json["debt_bound"] = double_vector_json(lil.debt_bound);
    lil_json["martingale_target"] = double_vector_json(lil.martingale_target);
    j["lil"] = lil_json;

    json kol_json;
    kol_json["running_max"] = kol.running_max;
    kol_json["running_min"] = kol.running_min;
    kol_json["sigma_target"] = double_or_null(kol.sigma_target);
    j["kolmogorov"] = kol_json;

    json ssc_json;
    json series = json::array();
    for (const SscPoint& pt : ssc.series) {
        json p;
        p["t"] = pt.t;
        p["gap"] = pt.segment_max_gap;
        p["scaled"] = pt.scaled;
        series.push_back(p);
    }
    ssc_json["series"] = series;
    ssc_json["trend_slope"] = ssc.slope_defined ? json(ssc.trend_slope) : json(nullptr);
    ssc_json["max_integer_gap"] =
        ssc.max_integer_gap >= 0 ? json(ssc.max_integer_gap) : json(nullptr);
    j["ssc"] = ssc_json;
    return j;
}

Quantiles quantiles(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("quantiles: empty sample");
    std::sort(values.begin(), values.end());
    const auto at = [&](double f) {
        // linear interpolation between order statistics
        const double pos = f * static_cast<double>(values.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    };
    Quantiles q;
    q.min = values.front();
    q.q25 = at(0.25);
    q.median = at(0.5);
    q.q75 = at(0.75);
    q.max = values.back();
    return q;
}

nlohmann::json quantiles_json(const Quantiles& q) {
    json j;
    j["min"] = q.min;
    j["q25"] = q.q25;
    j["median"] = q.median;
    j["q75"] = q.q75;
    j["max"] = q.max;
    return j;
}

}  // namespace debtsim
