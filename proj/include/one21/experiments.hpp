#pragma once

// Seeded Monte Carlo and parameter sweeps, with CSV/JSON emission.
//
// Reproducibility contract: (config, seed) fully determines every output
// byte. CSV cells are printed with "%.12g"; JSON is emitted with sorted
// keys. Monte Carlo samples may be evaluated in parallel (ONE21_THREADS
// caps the worker count, 0 or unset picks the hardware default) without
// changing any output, since sample k draws from its own PRNG substream.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "one21/analysis.hpp"
#include "one21/capacity.hpp"
#include "one21/model.hpp"
#include "one21/prng.hpp"

namespace one21 {

struct ExperimentConfig {
    PropagationParams params;
    double d = 100.0;
    std::uint64_t seed = 12345;
    int samples = 1000;
    Rect region;                   // sampling region for both relays
    std::optional<Rect> region2;   // optional separate region for relay 2
    double eps_rel = 1e-6;         // offset of the reference (optimal) topology

    static ExperimentConfig defaults(double d, const PropagationParams& params) {
        ExperimentConfig cfg;
        cfg.params = params;
        cfg.d = d;
        cfg.region = Rect{0.0, d, -d / 2.0, d / 2.0};
        return cfg;
    }

    void validate() const {
        params.validate();
        if (!(d > 0.0)) throw std::invalid_argument("config: d must be positive");
        if (samples < 1) throw std::invalid_argument("config: samples must be >= 1");
        region.validate();
        if (region2) region2->validate();
        if (!(eps_rel > 0.0) || eps_rel >= 0.5)
            throw std::invalid_argument("config: eps_rel must lie in (0, 1/2)");
    }
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return static_cast<int>(i);
        throw std::invalid_argument("table: no column named " + name);
    }
    double at(std::size_t row, const std::string& name) const {
        return rows[row][static_cast<std::size_t>(column(name))];
    }
};

struct ExperimentResult {
    Table table;
    nlohmann::json summary;
};

inline int thread_count() {
    if (const char* env = std::getenv("ONE21_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace detail {

inline void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

inline nlohmann::json config_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["gamma"] = cfg.params.gamma;
    j["alpha"] = cfg.params.a;
    j["mode"] = cfg.params.mode == CapacityMode::Approx ? "approx" : "exact";
    j["d"] = cfg.d;
    j["seed"] = cfg.seed;
    j["samples"] = cfg.samples;
    j["eps_rel"] = cfg.eps_rel;
    j["region"] = {{"x", {cfg.region.x0, cfg.region.x1}}, {"y", {cfg.region.y0, cfg.region.y1}}};
    j["prng"] = "splitmix64";
    return j;
}

}  // namespace detail

// Relays placed uniformly at random in the region; per-sample capacity from
// the flow program on the raw (unprojected) topology. The summary carries
// the reference capacity of the relays-at-endpoints topology at eps_rel.
inline ExperimentResult monte_carlo(const ExperimentConfig& cfg) {
    cfg.validate();
    const Rect r1 = cfg.region;
    const Rect r2 = cfg.region2.value_or(cfg.region);

    const double reference =
        flow_capacity(gain_matrix(make_theorem_topology(cfg.d, cfg.eps_rel), cfg.params)).capacity;

    struct Row {
        double x1, y1, x2, y2, capacity;
    };
    std::vector<Row> rows(static_cast<std::size_t>(cfg.samples));
    detail::parallel_for(cfg.samples, thread_count(), [&](int k) {
        SplitMix64 rng = SplitMix64::substream(cfg.seed, static_cast<std::uint64_t>(k));
        Row row;
        row.x1 = rng.uniform(r1.x0, r1.x1);
        row.y1 = rng.uniform(r1.y0, r1.y1);
        row.x2 = rng.uniform(r2.x0, r2.x1);
        row.y2 = rng.uniform(r2.y0, r2.y1);
        Topology topo{{0.0, 0.0}, {cfg.d, 0.0}, {{row.x1, row.y1}, {row.x2, row.y2}}};
        row.capacity = flow_capacity(gain_matrix(topo, cfg.params)).capacity;
        rows[static_cast<std::size_t>(k)] = row;
    });

    ExperimentResult res;
    res.table.columns = {"sample", "x1", "y1", "x2", "y2", "capacity_bits"};
    double sum = 0.0, lo = rows[0].capacity, hi = rows[0].capacity;
    for (int k = 0; k < cfg.samples; ++k) {
        const Row& row = rows[static_cast<std::size_t>(k)];
        res.table.rows.push_back({static_cast<double>(k), row.x1, row.y1, row.x2, row.y2, row.capacity});
        sum += row.capacity;
        lo = std::min(lo, row.capacity);
        hi = std::max(hi, row.capacity);
    }
    constexpr int kBins = 20;
    std::vector<int> counts(kBins, 0);
    for (const Row& row : rows) {
        int bin = static_cast<int>(row.capacity / reference * kBins);
        bin = std::max(0, std::min(kBins - 1, bin));
        ++counts[static_cast<std::size_t>(bin)];
    }
    res.summary = detail::config_json(cfg);
    res.summary["reference_capacity_bits"] = reference;
    res.summary["mean_capacity_bits"] = sum / cfg.samples;
    res.summary["min_capacity_bits"] = lo;
    res.summary["max_capacity_bits"] = hi;
    res.summary["histogram"] = {{"bins", kBins}, {"lo", 0.0}, {"hi", reference}, {"counts", counts}};
    return res;
}

// Capacity of the symmetric topology per beta: closed form cross-checked
// against the flow program while the s > 3^a hypothesis holds, plain flow
// program otherwise. Columns: beta, capacity_bits, lambda2_star, regime.
inline ExperimentResult beta_sweep(const ExperimentConfig& cfg, const std::vector<double>& beta_grid) {
    cfg.validate();
    for (std::size_t i = 0; i + 1 < beta_grid.size(); ++i)
        if (!(beta_grid[i] < beta_grid[i + 1]))
            throw std::invalid_argument("beta sweep: grid must be strictly increasing");

    ExperimentResult res;
    res.table.columns = {"beta", "capacity_bits", "lambda2_star", "regime"};
    int hypothesis_violations = 0;
    for (double beta : beta_grid) {
        if (!(beta > 0.0) || beta >= 0.5)
            throw std::invalid_argument("beta sweep: grid must lie in (0, 1/2)");
        const SymmetricGeometry g = make_symmetric_geometry(beta, cfg.d, cfg.params);
        const double lp_value = flow_capacity(gain_matrix(symmetric_topology(beta, cfg.d), cfg.params)).capacity;
        double capacity = lp_value;
        if (theorem_hypothesis(g)) {
            capacity = symmetric_capacity_closed_form(g);
            if (std::fabs(capacity - lp_value) > 1e-6 * std::max(1.0, std::fabs(capacity)))
                throw std::runtime_error("beta sweep: closed form disagrees with the flow program");
        } else {
            ++hypothesis_violations;
        }
        const ReducedCapacity reduced = symmetric_maxmin_capacity(g);
        res.table.rows.push_back(
            {beta, capacity, reduced.lambda2_star, routing_regime(beta) ? 1.0 : 0.0});
    }
    res.summary = detail::config_json(cfg);
    res.summary["sweep"] = "beta";
    res.summary["points"] = beta_grid.size();
    res.summary["cstar_bits"] = cstar(cfg.params, cfg.d);
    res.summary["hypothesis_violations"] = hypothesis_violations;
    return res;
}

// Per distance: relays-at-endpoints topology versus the equally spaced
// line, in both approximate and exact link models. winner columns are 1
// when the endpoint placement is ahead.
inline ExperimentResult distance_sweep_compare(const ExperimentConfig& cfg, const std::vector<double>& d_grid) {
    cfg.validate();
    for (std::size_t i = 0; i + 1 < d_grid.size(); ++i)
        if (!(d_grid[i] < d_grid[i + 1]))
            throw std::invalid_argument("distance sweep: grid must be strictly increasing");

    PropagationParams approx = cfg.params;
    approx.mode = CapacityMode::Approx;
    PropagationParams exact = cfg.params;
    exact.mode = CapacityMode::Exact;
    const double three_a = std::pow(3.0, cfg.params.a);

    ExperimentResult res;
    res.table.columns = {"d",
                         "theorem_capacity_bits",
                         "line_capacity_bits",
                         "winner",
                         "theorem_capacity_exact_bits",
                         "line_capacity_exact_bits",
                         "winner_exact",
                         "hypothesis_ok"};
    for (double d : d_grid) {
        if (!(d > 0.0)) throw std::invalid_argument("distance sweep: d must be positive");
        const Topology endpoint_topo = make_theorem_topology(d, cfg.eps_rel);
        const Topology line_topo = make_line_topology(d, 2);
        const double thm = flow_capacity(gain_matrix(endpoint_topo, approx)).capacity;
        const double line = flow_capacity(gain_matrix(line_topo, approx)).capacity;
        const double thm_exact = flow_capacity(gain_matrix(endpoint_topo, exact)).capacity;
        const double line_exact = flow_capacity(gain_matrix(line_topo, exact)).capacity;
        const double s = cfg.params.gamma / std::pow(d, cfg.params.a);
        res.table.rows.push_back({d, thm, line, thm > line ? 1.0 : 0.0, thm_exact, line_exact,
                                  thm_exact > line_exact ? 1.0 : 0.0, s > three_a ? 1.0 : 0.0});
    }
    res.summary = detail::config_json(cfg);
    res.summary["sweep"] = "distance_compare";
    res.summary["points"] = d_grid.size();
    res.summary["crossover_distance"] = crossover_distance(cfg.params);
    return res;
}

struct OutputPaths {
    std::string csv;
    std::string json;
};

// <prefix>.csv (UTF-8, header row, %.12g cells) and <prefix>.json
// (config echo plus summary); byte-stable for identical inputs.
inline OutputPaths write_outputs(const ExperimentResult& result, const std::string& path_prefix) {
    OutputPaths paths{path_prefix + ".csv", path_prefix + ".json"};

    std::ofstream csv(paths.csv, std::ios::binary);
    if (!csv) throw std::runtime_error("write_outputs: cannot open " + paths.csv);
    for (std::size_t i = 0; i < result.table.columns.size(); ++i)
        csv << (i ? "," : "") << result.table.columns[i];
    csv << "\n";
    char cell[64];
    for (const auto& row : result.table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(cell, sizeof(cell), "%.12g", row[i]);
            csv << (i ? "," : "") << cell;
        }
        csv << "\n";
    }
    if (!csv.flush()) throw std::runtime_error("write_outputs: failed writing " + paths.csv);

    std::ofstream js(paths.json, std::ios::binary);
    if (!js) throw std::runtime_error("write_outputs: cannot open " + paths.json);
    js << result.summary.dump(2) << "\n";
    if (!js.flush()) throw std::runtime_error("write_outputs: failed writing " + paths.json);
    return paths;
}

inline std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2 || !(hi > lo)) throw std::invalid_argument("linspace: need n >= 2 and hi > lo");
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return v;
}

}  // namespace one21
