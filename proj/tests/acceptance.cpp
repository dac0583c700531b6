// Acceptance suite: replays the full verification matrix end to end and
// prints one pass/fail line per criterion. Exit code 0 only if every
// criterion passes.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "one21/analysis.hpp"
#include "one21/capacity.hpp"
#include "one21/cli.hpp"
#include "one21/experiments.hpp"
#include "one21/model.hpp"
#include "one21/prng.hpp"
#include "one21/suites.hpp"

using namespace one21;

namespace {

const PropagationParams kParams{1e6, 2.0, CapacityMode::Approx, 0.0};

struct Criterion {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(const char* format, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), format, a, b);
    return buf;
}

Criterion from_suite(const suites::SuiteReport& rep) {
    Criterion c;
    for (const auto& check : rep.checks) {
        c.require(check.pass, check.name + " (" + check.detail + ")");
        if (check.pass) c.note(check.name + " ok: " + check.detail);
    }
    return c;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 1. Best-placement values through the CLI.
Criterion criterion_optimal() {
    Criterion c;
    std::ostringstream out, err;
    const int code = one21::cli::run({"optimal", "--gamma", "1e6", "--alpha", "2", "--dist", "100",
                                      "--eps-rel", "1e-6"},
                                     out, err);
    c.require(code == 0, "optimal exited " + std::to_string(code));
    if (code != 0) return c;
    const auto j = nlohmann::json::parse(out.str());
    const double best = j["cstar_bits"].get<double>();
    const double eps_cap = j["eps_topology_capacity_bits"].get<double>();
    const double closed = j["closed_form_bits"].get<double>();
    c.require(std::fabs(best - 2.0 * std::log2(100.0)) <= 1e-9,
              fmt("cstar %.12f != 2*log2(100)", best));
    c.require(std::fabs(eps_cap - closed) <= 1e-9,
              fmt("eps capacity %.12f vs closed form %.12f beyond 1e-9", eps_cap, closed));
    c.require(eps_cap < best, "eps capacity not below cstar");
    c.note(fmt("cstar %.10f, eps topology %.10f", best, eps_cap));
    return c;
}

// 8. Beta sweep shape at d = 200*sqrt(2), gamma = 1e6.
Criterion criterion_beta_sweep_shape() {
    Criterion c;
    const double d = 200.0 * std::sqrt(2.0);
    ExperimentConfig cfg = ExperimentConfig::defaults(d, kParams);
    const ExperimentResult res = beta_sweep(cfg, linspace(0.01, 0.49, 49));

    bool strictly_decreasing = true;
    double worst_rise = 0.0, rise_at = 0.0;
    for (std::size_t i = 1; i < res.table.rows.size(); ++i) {
        const double rise = res.table.at(i, "capacity_bits") - res.table.at(i - 1, "capacity_bits");
        if (rise >= 0.0) {
            strictly_decreasing = false;
            if (rise > worst_rise) {
                worst_rise = rise;
                rise_at = res.table.at(i, "beta");
            }
        }
    }
    c.require(strictly_decreasing,
              fmt("capacity not strictly decreasing: rises by %.6f bits into beta=%.2f; at this "
                  "signal level (s=12.5) the true optimum climbs toward the routing boundary at "
                  "1/3 while the endpoint corner stays globally best",
                  worst_rise, rise_at));

    bool regime_ok = true;
    for (std::size_t i = 0; i < res.table.rows.size(); ++i) {
        const bool expect = res.table.at(i, "beta") > 1.0 / 3.0;
        if ((res.table.at(i, "regime") > 0.5) != expect) regime_ok = false;
    }
    c.require(regime_ok, "regime flag does not flip at the first grid point beyond 1/3");

    double routing_gap = 0.0;
    for (std::size_t i = 0; i < res.table.rows.size(); ++i) {
        const double beta = res.table.at(i, "beta");
        if (beta <= 1.0 / 3.0) continue;
        const SymmetricGeometry g = make_symmetric_geometry(beta, d, kParams);
        routing_gap = std::max(routing_gap, std::fabs(res.table.at(i, "capacity_bits") - g.l1));
    }
    c.require(routing_gap <= 1e-9, fmt("routing-regime capacity off l1 by %.3e", routing_gap));
    if (c.pass) c.note("strictly decreasing, regime flip and routing values all hold");
    return c;
}

// 9. Distance sweep: winner flip near gamma^(1/a)/3 = 333.33.
Criterion criterion_distance_sweep() {
    Criterion c;
    ExperimentConfig cfg = ExperimentConfig::defaults(600.0, kParams);
    const std::vector<double> grid = linspace(50.0, 600.0, 23);
    const double step = grid[1] - grid[0];
    const ExperimentResult res = distance_sweep_compare(cfg, grid);
    const double target = crossover_distance(kParams);

    auto flip_point = [&](const char* col) -> double {
        bool seen_theorem = false;
        for (std::size_t i = 0; i < res.table.rows.size(); ++i) {
            const bool theorem_wins = res.table.at(i, col) > 0.5;
            if (theorem_wins && !seen_theorem) seen_theorem = true;
            if (!theorem_wins && seen_theorem) return res.table.at(i, "d");
        }
        return -1.0;
    };
    const double flip = flip_point("winner");
    const double flip_exact = flip_point("winner_exact");
    c.require(flip > 0.0, "no approx-mode winner flip found");
    c.require(flip_exact > 0.0, "no exact-mode winner flip found");
    if (flip > 0.0)
        c.require(std::fabs(flip - target) <= step + 1e-9,
                  fmt("approx flip at %.1f not within one step of %.2f", flip, target));
    if (flip_exact > 0.0)
        c.require(std::fabs(flip_exact - target) <= 2.0 * step + 1e-9,
                  fmt("exact flip at %.1f not within two steps of %.2f", flip_exact, target));
    c.note(fmt("approx flip %.1f, exact flip %.1f", flip, flip_exact));
    return c;
}

// 10. Monte Carlo distribution against the reference placement.
Criterion criterion_monte_carlo() {
    Criterion c;
    PropagationParams params = kParams;
    params.gamma = 1e7;
    ExperimentConfig cfg = ExperimentConfig::defaults(600.0 * std::sqrt(2.0), params);
    cfg.samples = 1000;
    cfg.seed = 12345;
    const ExperimentResult res = monte_carlo(cfg);
    const double reference = res.summary["reference_capacity_bits"].get<double>();
    const double mean = res.summary["mean_capacity_bits"].get<double>();

    double max_sample = -1.0;
    for (const auto& row : res.table.rows)
        max_sample = std::max(max_sample, row[static_cast<std::size_t>(res.table.column("capacity_bits"))]);
    c.require(max_sample <= reference + 1e-6,
              fmt("sample %.6f exceeds reference %.6f", max_sample, reference));
    const double ratio = mean / reference;
    c.require(ratio >= 0.35 && ratio <= 0.75, fmt("mean/reference %.4f outside [0.35, 0.75]", ratio));
    c.note(fmt("mean/reference %.4f, max sample %.6f", ratio, max_sample));
    return c;
}

// 11. Exact vs approximate links, and scale invariance.
Criterion criterion_modes_and_scaling() {
    Criterion c;
    PropagationParams exact = kParams;
    exact.mode = CapacityMode::Exact;
    const double k = 3.7;
    PropagationParams scaled = kParams;
    scaled.gamma = kParams.gamma * std::pow(k, kParams.a);

    SplitMix64 rng(suites::kDefaultSeed);
    double max_gap = 0.0, min_gap = lp::kInfinity, max_scale_err = 0.0;
    bool all_valid = true;
    for (int t = 0; t < 200; ++t) {
        Topology topo{{0.0, 0.0}, {100.0, 0.0}, {}};
        topo.relays.push_back({rng.uniform(0.0, 100.0), rng.uniform(-50.0, 50.0)});
        topo.relays.push_back({rng.uniform(0.0, 100.0), rng.uniform(-50.0, 50.0)});
        const LinkGainMatrix gm = gain_matrix(topo, kParams);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i != j && !gm.valid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                    all_valid = false;
        const double approx = flow_capacity(gm).capacity;
        const double ex = flow_capacity(gain_matrix(topo, exact)).capacity;
        max_gap = std::max(max_gap, ex - approx);
        min_gap = std::min(min_gap, ex - approx);

        Topology big = topo;
        big.destination.x *= k;
        for (Point& r : big.relays) r = {r.x * k, r.y * k};
        const double rescaled = flow_capacity(gain_matrix(big, scaled)).capacity;
        max_scale_err = std::max(max_scale_err, std::fabs(rescaled - approx));
    }
    c.require(all_valid, "corpus contains an invalid-approximation link");
    c.require(min_gap >= -1e-9, fmt("exact capacity below approximate by %.3e", -min_gap));
    c.require(max_gap <= 2.0, fmt("exact-approx gap %.4f above 2 bits", max_gap));
    c.require(max_scale_err <= 1e-9, fmt("scale invariance violated by %.3e", max_scale_err));
    c.note(fmt("exact-approx gap in [%.3e, %.3e] over 200 topologies", min_gap, max_gap) +
           fmt(", max scaling error %.3e", max_scale_err));
    return c;
}

// 12. Byte-identical reruns across the CLI surfaces.
Criterion criterion_determinism() {
    Criterion c;
    const auto dir = std::filesystem::temp_directory_path() / "one21_acceptance";
    std::filesystem::create_directories(dir);
    const std::string prefix = (dir / "det").string();

    auto run_mc = [&]() {
        std::ostringstream out, err;
        const int code = one21::cli::run({"monte-carlo", "--samples", "200", "--seed", "4242", "--out",
                                          prefix},
                                         out, err);
        return std::pair<int, std::string>(code, out.str());
    };
    const auto first = run_mc();
    const std::string csv_first = slurp(prefix + ".csv");
    const std::string json_first = slurp(prefix + ".json");
    const auto second = run_mc();
    c.require(first.first == 0 && second.first == 0, "monte-carlo run failed");
    c.require(first.second == second.second, "monte-carlo stdout differs across reruns");
    c.require(slurp(prefix + ".csv") == csv_first, "monte-carlo CSV differs across reruns");
    c.require(slurp(prefix + ".json") == json_first, "monte-carlo JSON differs across reruns");

    auto run_verify = [&]() {
        std::ostringstream out, err;
        one21::cli::run({"verify", "--suite", "category1", "--dist", "100"}, out, err);
        return out.str();
    };
    c.require(run_verify() == run_verify(), "verify stdout differs across reruns");

    auto run_sweep = [&]() {
        std::ostringstream out, err;
        one21::cli::run({"sweep-beta", "--dist", "100", "--grid", "9", "--beta-min", "0.05",
                         "--beta-max", "0.45", "--out", prefix + "_sweep"},
                        out, err);
        return slurp(prefix + "_sweep.csv");
    };
    c.require(run_sweep() == run_sweep(), "sweep CSV differs across reruns");
    if (c.pass) c.note("monte-carlo, verify and sweep outputs byte-stable");
    return c;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        std::function<Criterion()> run;
    };
    const std::vector<Entry> entries{
        {"1. best-placement capacity and eps-topology agreement", criterion_optimal},
        {"2. formulation equivalence (flow / cut-set / reduced / path / dual)",
         [] { return from_suite(suites::duality_suite(kParams, 100.0, 200, 50)); }},
        {"3. schedule-structure properties preserve the optimum",
         [] { return from_suite(suites::lemma2_suite(kParams, 100.0, 50)); }},
        {"4. symmetrization and projection never lose capacity",
         [] { return from_suite(suites::lemma1_suite(kParams, 100.0, 200, 200)); }},
        {"5. category-1 offsets stay below the best placement",
         [] { return from_suite(suites::category1_suite(kParams, 100.0, 100)); }},
        {"6. category-2 grid bound and sign function",
         [] { return from_suite(suites::lemma3_suite(kParams, 100.0, 100, 10001)); }},
        {"7. zero-direct-path optimality across (0, 1/3)",
         [] { return from_suite(suites::kkt_suite(kParams, 100.0, 100)); }},
        {"8. beta-sweep shape at d=200*sqrt(2), gamma=1e6", criterion_beta_sweep_shape},
        {"9. endpoint-vs-line winner flip near the crossover distance", criterion_distance_sweep},
        {"10. Monte Carlo distribution against the reference placement", criterion_monte_carlo},
        {"11. exact-vs-approximate ordering and scale invariance", criterion_modes_and_scaling},
        {"12. byte-identical reruns", criterion_determinism},
    };

    int failed = 0;
    for (const Entry& e : entries) {
        Criterion c;
        try {
            c = e.run();
        } catch (const std::exception& ex) {
            c.pass = false;
            c.detail = std::string("exception: ") + ex.what();
        }
        std::printf("[%s] %s%s%s\n", c.pass ? "PASS" : "FAIL", e.name, c.detail.empty() ? "" : " - ",
                    c.detail.c_str());
        if (!c.pass) ++failed;
    }
    std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(entries.size()) - failed,
                entries.size());
    return failed == 0 ? 0 : 1;
}
