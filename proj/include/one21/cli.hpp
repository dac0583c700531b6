#pragma once

// Command-line front end. Single computations print JSON to stdout, sweeps
// write <prefix>.csv / <prefix>.json, and `verify` prints a pass/fail table.
// Exit codes: 0 success or suite pass, 1 failure, 2 usage error. Identical
// argv (seed included) produces byte-identical stdout and files.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "one21/analysis.hpp"
#include "one21/capacity.hpp"
#include "one21/experiments.hpp"
#include "one21/model.hpp"
#include "one21/suites.hpp"

namespace one21::cli {

namespace detail {

inline bool parse_point(const std::string& text, Point& p) {
    char trailing = '\0';
    return std::sscanf(text.c_str(), "%lf,%lf%c", &p.x, &p.y, &trailing) == 2;
}

inline nlohmann::json params_json(const PropagationParams& params, double d) {
    return {{"gamma", params.gamma},
            {"alpha", params.a},
            {"mode", params.mode == CapacityMode::Approx ? "approx" : "exact"},
            {"dist", d}};
}

inline int run_capacity(const PropagationParams& params, double d, const std::vector<std::string>& relay_args,
                        bool dump_lp, std::ostream& out, std::ostream& err) {
    Topology topo{{0.0, 0.0}, {d, 0.0}, {}};
    for (const std::string& text : relay_args) {
        Point p;
        if (!parse_point(text, p)) {
            err << "invalid --relay value '" << text << "', expected x,y\n";
            return 2;
        }
        topo.relays.push_back(p);
    }
    const LinkGainMatrix gm = gain_matrix(topo, params);
    if (dump_lp) err << lp::to_text(flow_program(gm));
    const CapacityResult res = flow_capacity(gm);

    nlohmann::json j = params_json(params, d);
    j["n_relays"] = topo.n_relays();
    j["capacity_bits"] = res.capacity;
    j["formulation"] = "flow";
    nlohmann::json links = nlohmann::json::array();
    for (int i = 0; i + 1 < gm.n_nodes; ++i) {
        for (int to = 1; to < gm.n_nodes; ++to) {
            if (i == to) continue;
            links.push_back({{"from", i},
                             {"to", to},
                             {"distance", gm.dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(to)]},
                             {"capacity_bits", gm.cap[static_cast<std::size_t>(i)][static_cast<std::size_t>(to)]},
                             {"approx_valid", static_cast<bool>(
                                 gm.valid[static_cast<std::size_t>(i)][static_cast<std::size_t>(to)])},
                             {"lambda", res.schedule.at(i, to)},
                             {"flow_bits", res.flows->at(i, to)}});
        }
    }
    j["links"] = std::move(links);
    out << j.dump(2) << "\n";
    return 0;
}

inline int run_optimal(const PropagationParams& params, double d, double eps_rel, std::ostream& out) {
    const double best = cstar(params, d);
    const double lp_value = flow_capacity(gain_matrix(make_theorem_topology(d, eps_rel), params)).capacity;
    const SymmetricGeometry g = make_symmetric_geometry(eps_rel, d, params);

    nlohmann::json j = params_json(params, d);
    j["eps_rel"] = eps_rel;
    j["s"] = g.s;
    j["hypothesis_s_gt_3a"] = theorem_hypothesis(g);
    j["cstar_bits"] = best;
    j["eps_topology_capacity_bits"] = lp_value;
    j["closed_form_bits"] = symmetric_capacity_closed_form(g);
    j["gap_to_cstar_bits"] = best - lp_value;
    out << j.dump(2) << "\n";
    return 0;
}

inline int run_verify(const std::string& suite, const PropagationParams& params, double d,
                      std::uint64_t seed, std::ostream& out) {
    suites::SuiteReport rep;
    if (suite == "duality")
        rep = suites::duality_suite(params, d, 200, 50, seed);
    else if (suite == "lemma1")
        rep = suites::lemma1_suite(params, d, 200, 200, seed);
    else if (suite == "lemma2")
        rep = suites::lemma2_suite(params, d, 50, seed);
    else if (suite == "lemma3")
        rep = suites::lemma3_suite(params, d);
    else if (suite == "category1")
        rep = suites::category1_suite(params, d, 100, seed);
    else if (suite == "kkt")
        rep = suites::kkt_suite(params, d);
    else if (suite == "theorem")
        rep = suites::theorem_suite(params, d);
    suites::print_report(rep, out);
    return rep.pass() ? 0 : 1;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"approximate capacity tools for Gaussian full-duplex 1-2-1 relay networks"};
    app.require_subcommand(1);

    // shared flag values; defaults vary per subcommand
    PropagationParams params;
    std::string mode = "approx";
    double min_distance = 0.0;

    auto add_propagation_flags = [&](CLI::App* cmd, double gamma_default) {
        params.gamma = gamma_default;
        cmd->add_option("--gamma", params.gamma, "SNR-scale constant gamma (dimensionless)")
            ->capture_default_str();
        cmd->add_option("--alpha", params.a, "path-loss exponent a (> 1)")->capture_default_str();
        cmd->add_option("--mode", mode, "link model: approx or exact")
            ->check(CLI::IsMember({"approx", "exact"}))
            ->capture_default_str();
        cmd->add_option("--min-distance", min_distance,
                        "clamp floor for coincident nodes (0 = 1e-9 of the source-destination distance)")
            ->capture_default_str();
    };

    double cap_d = 100.0;
    std::vector<std::string> relay_args;
    bool dump_lp = false;
    CLI::App* cap = app.add_subcommand("capacity", "capacity, schedule and flows of one topology (JSON)");
    add_propagation_flags(cap, 1e6);
    cap->add_option("--dist", cap_d, "source-destination distance (length units)")->capture_default_str();
    cap->add_option("--relay", relay_args, "relay coordinates x,y (repeatable)");
    cap->add_flag("--dump-lp", dump_lp, "dump the flow program to stderr, one constraint per line");

    double opt_d = 100.0, opt_eps = 1e-6;
    CLI::App* optimal = app.add_subcommand("optimal", "best-placement capacity and its eps-offset topology");
    add_propagation_flags(optimal, 1e6);
    optimal->add_option("--dist", opt_d, "source-destination distance")->capture_default_str();
    optimal->add_option("--eps-rel", opt_eps, "relative relay offset of the reference topology")
        ->capture_default_str();

    double sweep_d = 200.0 * std::sqrt(2.0);
    int sweep_grid = 49;
    double beta_min = 0.01, beta_max = 0.49;
    std::string sweep_out = "beta_sweep";
    CLI::App* sweep = app.add_subcommand("sweep-beta", "capacity across symmetric relay offsets (CSV)");
    add_propagation_flags(sweep, 1e6);
    sweep->add_option("--dist", sweep_d, "source-destination distance")->capture_default_str();
    sweep->add_option("--grid", sweep_grid, "number of beta grid points")->capture_default_str();
    sweep->add_option("--beta-min", beta_min, "smallest beta")->capture_default_str();
    sweep->add_option("--beta-max", beta_max, "largest beta")->capture_default_str();
    sweep->add_option("--out", sweep_out, "output path prefix")->capture_default_str();

    double mc_d = 600.0 * std::sqrt(2.0);
    int mc_samples = 1000;
    std::uint64_t mc_seed = 12345;
    double mc_eps = 1e-6;
    std::string mc_out = "monte_carlo";
    CLI::App* mc = app.add_subcommand("monte-carlo", "capacity of uniformly random relay placements (CSV)");
    add_propagation_flags(mc, 1e7);
    mc->add_option("--dist", mc_d, "source-destination distance")->capture_default_str();
    mc->add_option("--samples", mc_samples, "number of random topologies")->capture_default_str();
    mc->add_option("--seed", mc_seed, "PRNG seed")->capture_default_str();
    mc->add_option("--eps-rel", mc_eps, "relative offset of the reference topology")->capture_default_str();
    mc->add_option("--out", mc_out, "output path prefix")->capture_default_str();

    double cmp_dmin = 50.0, cmp_dmax = 600.0;
    int cmp_grid = 23;
    double cmp_eps = 1e-6;
    std::string cmp_out = "compare_line";
    CLI::App* cmp = app.add_subcommand("compare-line",
                                       "endpoint placement vs equally spaced line across distances (CSV)");
    add_propagation_flags(cmp, 1e6);
    cmp->add_option("--d-min", cmp_dmin, "smallest distance")->capture_default_str();
    cmp->add_option("--d-max", cmp_dmax, "largest distance")->capture_default_str();
    cmp->add_option("--grid", cmp_grid, "number of distance grid points")->capture_default_str();
    cmp->add_option("--eps-rel", cmp_eps, "relative offset of the endpoint topology")->capture_default_str();
    cmp->add_option("--out", cmp_out, "output path prefix")->capture_default_str();

    std::string suite;
    double verify_d = 100.0;
    std::uint64_t verify_seed = suites::kDefaultSeed;
    CLI::App* verify = app.add_subcommand("verify", "run a property suite and print pass/fail with margins");
    add_propagation_flags(verify, 1e6);
    verify->add_option("--suite", suite, "one of: duality, lemma1, lemma2, lemma3, category1, kkt, theorem")
        ->required()
        ->check(CLI::IsMember({"duality", "lemma1", "lemma2", "lemma3", "category1", "kkt", "theorem"}));
    verify->add_option("--dist", verify_d, "source-destination distance")->capture_default_str();
    verify->add_option("--seed", verify_seed, "PRNG seed for the sampled corpora")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    params.mode = mode == "exact" ? CapacityMode::Exact : CapacityMode::Approx;
    params.min_distance = min_distance;

    try {
        if (cap->parsed()) return detail::run_capacity(params, cap_d, relay_args, dump_lp, out, err);
        if (optimal->parsed()) return detail::run_optimal(params, opt_d, opt_eps, out);
        if (sweep->parsed()) {
            ExperimentConfig cfg = ExperimentConfig::defaults(sweep_d, params);
            const ExperimentResult res = beta_sweep(cfg, linspace(beta_min, beta_max, sweep_grid));
            const OutputPaths paths = write_outputs(res, sweep_out);
            out << res.summary.dump(2) << "\n";
            err << "wrote " << paths.csv << " and " << paths.json << "\n";
            return 0;
        }
        if (mc->parsed()) {
            ExperimentConfig cfg = ExperimentConfig::defaults(mc_d, params);
            cfg.samples = mc_samples;
            cfg.seed = mc_seed;
            cfg.eps_rel = mc_eps;
            const ExperimentResult res = monte_carlo(cfg);
            const OutputPaths paths = write_outputs(res, mc_out);
            out << res.summary.dump(2) << "\n";
            err << "wrote " << paths.csv << " and " << paths.json << "\n";
            return 0;
        }
        if (cmp->parsed()) {
            ExperimentConfig cfg = ExperimentConfig::defaults(cmp_dmax, params);
            cfg.eps_rel = cmp_eps;
            const ExperimentResult res = distance_sweep_compare(cfg, linspace(cmp_dmin, cmp_dmax, cmp_grid));
            const OutputPaths paths = write_outputs(res, cmp_out);
            out << res.summary.dump(2) << "\n";
            err << "wrote " << paths.csv << " and " << paths.json << "\n";
            return 0;
        }
        if (verify->parsed()) return detail::run_verify(suite, params, verify_d, verify_seed, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("one21");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace one21::cli
