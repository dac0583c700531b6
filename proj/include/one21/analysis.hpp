#pragma once

// Closed-form quantities and numerical verifiers for the two-relay
// placement results.
//
// Headline facts, all in bits with s = gamma/d^a:
//   * Best achievable approximate capacity over all two-relay placements,
//     provided s > 3^a: cstar = 2*log2(s), approached by pushing one relay
//     toward the source and the other toward the destination.
//   * beta splits into two ranges at the threshold 1/s^(1/a) (equivalently
//     d/gamma^(1/a)); each range has its own argument that a symmetric
//     placement at offset beta stays strictly below cstar.
//   * For beta < 1/3 the path program has an optimal vertex with zero
//     direct-path usage whenever l1*(2*l2-l3)/(l1+l2-l3) >= l4; its value
//     gives the closed-form capacity l2*(2*l1-l3)/(l1+l2-l3). For
//     beta >= 1/3 the optimum is plain routing with capacity l1.

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "one21/capacity.hpp"
#include "one21/model.hpp"

namespace one21 {

// 2*log2(gamma/d^a); only meaningful while the approximation is valid.
inline double cstar(const PropagationParams& params, double d) {
    params.validate();
    if (!(d > 0.0)) throw std::invalid_argument("cstar: d must be positive");
    const double log2_s = std::log2(params.gamma) - params.a * std::log2(d);
    if (!(log2_s > 0.0)) throw std::domain_error("cstar: requires gamma/d^a > 1");
    return 2.0 * log2_s;
}

inline double cstar(const SymmetricGeometry& g) { return 2.0 * g.l4; }

inline bool theorem_hypothesis(const SymmetricGeometry& g) { return g.s > std::pow(3.0, g.a); }

// beta threshold between the two proof ranges: d/gamma^(1/a) = 1/s^(1/a).
inline double category_threshold(const PropagationParams& params, double d) {
    params.validate();
    if (!(d > 0.0)) throw std::invalid_argument("category: d must be positive");
    return d / std::pow(params.gamma, 1.0 / params.a);
}

enum class Category { Cat1, Cat2 };

struct CategoryReport {
    double beta = 0.0;
    Category category = Category::Cat2;
    double margin = 0.0;           // cstar minus the relevant bound's maximum; NaN if s <= 3^a
    double witness_lambda2 = 0.0;  // where that maximum (Cat1) / tightest gap (Cat2) sits
};

// Monotone witness in the Cat1 contradiction: the near-cut bound reaching
// cstar at share lambda2 would force d >= gamma^(1/a)*beta*((1-beta)/beta)^lambda2,
// which already fails at lambda2 = 0 for Cat1 offsets.
inline double category1_distance_witness(const SymmetricGeometry& g, double lambda2) {
    const double gamma_root = std::pow(g.s, 1.0 / g.a) * g.d;  // gamma^(1/a)
    return gamma_root * g.beta * std::pow((1.0 - g.beta) / g.beta, lambda2);
}

struct Category1Report {
    double margin = 0.0;     // cstar - max_lambda2 near-cut bound (= cstar - l1)
    double max_bound = 0.0;  // that maximum, attained at lambda2 = 0
    std::array<double, 3> witness = {0.0, 0.0, 0.0};  // distance witness at lambda2 = 0, 1/2, 1
    bool witness_monotone = false;
};

inline Category1Report category1_margin(double beta, const SymmetricGeometry& g) {
    if (!(beta > 0.0) || beta > 0.5) throw std::invalid_argument("category1: beta must lie in (0, 1/2]");
    if (!theorem_hypothesis(g)) throw std::invalid_argument("category1: requires gamma/d^a > 3^a");
    const double threshold = 1.0 / std::pow(g.s, 1.0 / g.a);
    if (!(beta > threshold)) throw std::invalid_argument("category1: beta must exceed d/gamma^(1/a)");
    Category1Report rep;
    // near-cut bound is linear in lambda2 with slope l2 - l1 <= 0
    rep.max_bound = std::max(cut_bound_near(g, 0.0), cut_bound_near(g, 1.0));
    rep.margin = cstar(g) - rep.max_bound;
    rep.witness = {category1_distance_witness(g, 0.0), category1_distance_witness(g, 0.5),
                   category1_distance_witness(g, 1.0)};
    rep.witness_monotone = rep.witness[0] <= rep.witness[1] && rep.witness[1] <= rep.witness[2];
    return rep;
}

struct GridGapResult {
    bool holds = false;
    double min_margin = 0.0;      // smallest cstar - min{near-cut, relay-pair-cut} over the grid
    double argmin_lambda2 = 0.0;
};

// Cat2 check: on a uniform lambda2 grid (endpoints included), the smaller
// of the near-cut and relay-pair-cut bounds stays strictly below cstar.
inline GridGapResult lemma3_check(const SymmetricGeometry& g, int grid_size = 10001) {
    if (grid_size < 2) throw std::invalid_argument("lemma3: grid needs at least two points");
    if (!theorem_hypothesis(g)) throw std::invalid_argument("lemma3: requires gamma/d^a > 3^a");
    const double threshold = 1.0 / std::pow(g.s, 1.0 / g.a);
    if (!(g.beta > 0.0) || g.beta > threshold)
        throw std::invalid_argument("lemma3: beta must lie in (0, d/gamma^(1/a)]");
    const double target = cstar(g);
    GridGapResult res;
    res.min_margin = lp::kInfinity;
    for (int k = 0; k < grid_size; ++k) {
        const double lam = static_cast<double>(k) / (grid_size - 1);
        const double margin = target - std::min(cut_bound_near(g, lam), cut_bound_relay(g, lam));
        if (margin < res.min_margin) {
            res.min_margin = margin;
            res.argmin_lambda2 = lam;
        }
    }
    res.holds = res.min_margin > 1e-9;  // "strictly below" at solver scale
    return res;
}

inline CategoryReport classify_beta(double beta, const PropagationParams& params, double d) {
    if (!(beta > 0.0) || beta > 0.5) throw std::invalid_argument("category: beta must lie in (0, 1/2]");
    CategoryReport rep;
    rep.beta = beta;
    rep.category = beta > category_threshold(params, d) ? Category::Cat1 : Category::Cat2;
    rep.margin = std::numeric_limits<double>::quiet_NaN();
    rep.witness_lambda2 = std::numeric_limits<double>::quiet_NaN();
    const SymmetricGeometry g = make_symmetric_geometry(beta, d, params);
    if (theorem_hypothesis(g)) {
        if (rep.category == Category::Cat1) {
            rep.margin = category1_margin(beta, g).margin;
            rep.witness_lambda2 = 0.0;
        } else {
            const GridGapResult r = lemma3_check(g);
            rep.margin = r.min_margin;
            rep.witness_lambda2 = r.argmin_lambda2;
        }
    }
    return rep;
}

// Sign function behind the Cat2 argument: negative throughout
// (0, d/gamma^(1/a)] and nondecreasing in beta when s > 3^a.
inline double cat2_sign_function(double beta, const PropagationParams& params, double d) {
    params.validate();
    if (!(beta > 0.0) || beta >= 0.5) throw std::invalid_argument("sign function: beta must lie in (0, 1/2)");
    const double log2_s = std::log2(params.gamma) - params.a * std::log2(d);
    const double a = params.a;
    const double t1 = 2.0 * a * std::log2(1.0 - beta);
    const double t2 = log2_s + a * std::log2(beta);
    const double t3 = log2_s + a * std::log2(1.0 - 2.0 * beta);
    const double t4 = log2_s + a * std::log2(1.0 - beta);
    return t1 * t2 - t3 * t4;
}

struct SignFunctionReport {
    bool all_negative = false;
    bool nondecreasing = false;
    double max_value = 0.0;

    bool ok() const { return all_negative && nondecreasing; }
};

inline SignFunctionReport cat2_sign_function_monotonicity(const PropagationParams& params, double d,
                                                          int grid_points = 1000) {
    if (grid_points < 2) throw std::invalid_argument("sign function: grid needs at least two points");
    const double threshold = category_threshold(params, d);
    SignFunctionReport rep;
    rep.all_negative = true;
    rep.nondecreasing = true;
    rep.max_value = -lp::kInfinity;
    double prev = -lp::kInfinity;
    for (int k = 1; k <= grid_points; ++k) {
        const double beta = threshold * static_cast<double>(k) / grid_points;
        const double f = cat2_sign_function(beta, params, d);
        rep.all_negative = rep.all_negative && f < 0.0;
        rep.nondecreasing = rep.nondecreasing && f >= prev;
        rep.max_value = std::max(rep.max_value, f);
        prev = f;
    }
    return rep;
}

// Optimality condition for the zero-direct-path vertex of the path program
// (beta < 1/3): l1*(2*l2-l3)/(l1+l2-l3) >= l4. The smallest log2(s) for
// which it holds is kkt_sufficient_log_s(beta), which increases toward
// about 1.13*a at beta = 1/3; log2(s) >= 1.13*a is therefore sufficient for
// the whole range.
inline double kkt_sufficient_log_s(double beta, double a) {
    if (!(beta > 0.0) || beta > 1.0 / 3.0)
        throw std::invalid_argument("kkt bound: beta must lie in (0, 1/3]");
    return a * (std::log2(beta) / std::log2(1.0 - beta)) *
           std::log2((1.0 - beta) * (1.0 - beta) / (1.0 - 2.0 * beta));
}

struct KktReport {
    double condition_lhs = 0.0;  // l1*(2*l2-l3)/(l1+l2-l3)
    double condition_rhs = 0.0;  // l4
    bool holds = false;
    PathAllocation analytic_x;
    double analytic_capacity = 0.0;  // l2*(2*l1-l3)/(l1+l2-l3)
    double lp_gap = 0.0;             // |analytic - path-program optimum|
    bool sufficient_s_ok = false;    // log2(s) >= 1.13*a
};

inline KktReport kkt_condition(const SymmetricGeometry& g) {
    if (!(g.beta > 0.0) || g.beta >= 1.0 / 3.0)
        throw std::invalid_argument("kkt: beta must lie in (0, 1/3)");
    KktReport rep;
    const double denom = g.l1 + g.l2 - g.l3;
    rep.condition_lhs = g.l1 * (2.0 * g.l2 - g.l3) / denom;
    rep.condition_rhs = g.l4;
    rep.holds = rep.condition_lhs >= rep.condition_rhs;
    rep.analytic_x.x1 = 0.0;
    rep.analytic_x.x2 = (g.l1 - g.l3) / denom;
    rep.analytic_x.x4 = g.l2 / denom;
    rep.analytic_x.cap_direct = g.l4;
    rep.analytic_x.cap_single = g.l2;
    rep.analytic_x.cap_double = g.l3;
    rep.analytic_capacity = g.l2 * (2.0 * g.l1 - g.l3) / denom;
    rep.lp_gap = std::fabs(rep.analytic_capacity - path_capacity(g).capacity);
    rep.sufficient_s_ok = std::log2(g.s) >= 1.13 * g.a;
    return rep;
}

// Distance beyond which the equally spaced line network beats the
// relays-at-endpoints placement: gamma^(1/a)/3.
inline double crossover_distance(const PropagationParams& params) {
    params.validate();
    return std::pow(params.gamma, 1.0 / params.a) / 3.0;
}

// Above beta = 1/3 the optimal schedule degenerates to routing everything
// along source -> relay1 -> relay2 -> destination.
inline bool routing_regime(double beta) {
    if (!(beta > 0.0) || beta >= 0.5) throw std::invalid_argument("routing regime: beta must lie in (0, 1/2)");
    return beta > 1.0 / 3.0;
}

// Closed-form capacity on the symmetric slice; cross-check against an LP
// solve before trusting it in sweeps (it presumes the reduced form applies,
// which the s > 3^a hypothesis guarantees).
inline double symmetric_capacity_closed_form(const SymmetricGeometry& g) {
    if (!(g.beta > 0.0) || g.beta >= 0.5)
        throw std::invalid_argument("closed form: beta must lie in (0, 1/2)");
    if (g.beta < 1.0 / 3.0) return g.l2 * (2.0 * g.l1 - g.l3) / (g.l1 + g.l2 - g.l3);
    return g.l1;
}

}  // namespace one21
