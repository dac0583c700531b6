#pragma once

// Capacity formulations for full-duplex 1-2-1 networks.
//
// A node carries one steerable transmit beam and one steerable receive
// beam; a link is active only while both ends point at each other. A beam
// schedule assigns each directed link i->j an activation fraction
// lambda[i][j], constrained so every node transmits to at most one peer at
// a time and receives from at most one peer at a time. The approximate
// capacity is the optimum of a linear program over schedules and flows.
//
// Four routes to the same number are implemented:
//   flow_capacity            max-flow form: flows F[i][j] <= lambda*l, flow
//                            conservation at relays, beam budgets.
//   cutset_capacity          max-min-cut form: one constraint per
//                            source/destination-separating node subset.
//   symmetric_maxmin_capacity  two-relay symmetric networks reduce to a
//                            max-min of three linear functions of a single
//                            scalar; solved analytically.
//   path_capacity            time-sharing over the four source-destination
//                            paths of a two-relay network, with its dual
//                            certificate in path_dual_certificate.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "one21/lp.hpp"
#include "one21/model.hpp"

namespace one21 {

// Node-subset cut: the source plus the relays selected by relay_mask.
struct CutSet {
    std::uint32_t relay_mask = 0;

    std::vector<int> members() const {
        std::vector<int> m{0};
        for (int r = 0; r < 32; ++r)
            if (relay_mask & (1u << r)) m.push_back(r + 1);
        return m;
    }
    bool contains(int node, int n_relays) const {
        if (node == 0) return true;
        if (node == n_relays + 1) return false;
        return (relay_mask >> (node - 1)) & 1u;
    }
};

inline constexpr int kCutLimit = 12;

// All 2^N subsets containing the source and excluding the destination, in
// binary counting order over relay membership (bit k = relay k+1).
inline std::vector<CutSet> enumerate_cuts(int n_relays) {
    if (n_relays < 0) throw std::invalid_argument("cuts: relay count must be nonnegative");
    if (n_relays > kCutLimit)
        throw std::invalid_argument("cuts: enumeration capped at " + std::to_string(kCutLimit) + " relays");
    std::vector<CutSet> cuts;
    cuts.reserve(std::size_t{1} << n_relays);
    for (std::uint32_t mask = 0; mask < (1u << n_relays); ++mask) cuts.push_back(CutSet{mask});
    return cuts;
}

struct Schedule {
    int n_nodes = 0;
    std::vector<std::vector<double>> lambda;  // lambda[i][j] = activation of link i->j

    double at(int from, int to) const {
        return lambda[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
    }
    double transmit_usage(int node) const {
        double s = 0.0;
        for (int j = 0; j < n_nodes; ++j) s += lambda[static_cast<std::size_t>(node)][static_cast<std::size_t>(j)];
        return s;
    }
    double receive_usage(int node) const {
        double s = 0.0;
        for (int i = 0; i < n_nodes; ++i) s += lambda[static_cast<std::size_t>(i)][static_cast<std::size_t>(node)];
        return s;
    }
};

// Per-component view of a symmetric two-relay schedule: the near links
// (source->relay1, relay2->destination), the cross links (source->relay2,
// relay1->destination) and the inter-relay link.
struct SymmetricScheduleView {
    double lambda1 = 0.0;  // near links
    double lambda2 = 0.0;  // cross links
    double lambda3 = 0.0;  // relay1 -> relay2
};

inline SymmetricScheduleView symmetric_schedule_view(const Schedule& s) {
    if (s.n_nodes != 4) throw std::invalid_argument("schedule view: needs a two-relay network");
    return SymmetricScheduleView{s.at(0, 1), s.at(0, 2), s.at(1, 2)};
}

struct FlowMatrix {
    int n_nodes = 0;
    std::vector<std::vector<double>> F;  // F[i][j] = information flow on link i->j

    double at(int from, int to) const {
        return F[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
    }
    double into_destination() const {
        double s = 0.0;
        for (int i = 0; i < n_nodes; ++i) s += F[static_cast<std::size_t>(i)][static_cast<std::size_t>(n_nodes) - 1];
        return s;
    }
};

enum class Formulation { Flow, CutSet, ReducedMaxMin, Path };

struct CapacityResult {
    double capacity = 0.0;
    Schedule schedule;
    std::optional<FlowMatrix> flows;  // present for the flow formulation
    Formulation formulation = Formulation::Flow;
    int lp_iterations = 0;
};

// Extra linear equality/inequality over schedule variables, used to test
// that adding structural properties preserves the optimum.
struct ScheduleConstraint {
    struct Term {
        int from;
        int to;
        double coeff;
    };
    std::vector<Term> terms;
    lp::Relation rel = lp::Relation::Equal;
    double rhs = 0.0;
};

namespace detail {

struct LinkIndex {
    int n_nodes = 0;
    std::vector<std::pair<int, int>> links;           // (from, to), transmitters [0:N], receivers [1:N+1]
    std::vector<std::vector<int>> link_id;            // -1 when undefined

    explicit LinkIndex(int n_nodes_) : n_nodes(n_nodes_) {
        link_id.assign(static_cast<std::size_t>(n_nodes), std::vector<int>(static_cast<std::size_t>(n_nodes), -1));
        for (int i = 0; i + 1 < n_nodes; ++i) {
            for (int j = 1; j < n_nodes; ++j) {
                if (i == j) continue;
                link_id[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    static_cast<int>(links.size());
                links.push_back({i, j});
            }
        }
    }
    int n_links() const { return static_cast<int>(links.size()); }
    int id(int from, int to) const {
        const int v = link_id[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
        if (v < 0) throw std::invalid_argument("capacity: no such link");
        return v;
    }
};

inline void add_beam_budget_rows(lp::LinearProgram& prog, const LinkIndex& ix, int lambda_base) {
    const int n = ix.n_nodes;
    // one transmit budget per node in [0:N], one receive budget per node in [1:N+1]
    for (int i = 0; i + 1 < n; ++i) {
        std::vector<double> row(static_cast<std::size_t>(prog.n_vars()), 0.0);
        for (int j = 1; j < n; ++j)
            if (j != i) row[static_cast<std::size_t>(lambda_base + ix.id(i, j))] = 1.0;
        prog.add_constraint(std::move(row), lp::Relation::LessEq, 1.0);
    }
    for (int j = 1; j < n; ++j) {
        std::vector<double> row(static_cast<std::size_t>(prog.n_vars()), 0.0);
        for (int i = 0; i + 1 < n; ++i)
            if (i != j) row[static_cast<std::size_t>(lambda_base + ix.id(i, j))] = 1.0;
        prog.add_constraint(std::move(row), lp::Relation::LessEq, 1.0);
    }
}

}  // namespace detail

// Max-flow formulation. Variables: one activation and one flow per directed
// link; flows are capped by lambda*l, conserved at relays, and the
// objective is the total flow into the destination.
inline lp::LinearProgram flow_program(const LinkGainMatrix& gm,
                                      const std::vector<ScheduleConstraint>& extra = {}) {
    const int n = gm.n_nodes;
    if (n < 2) throw std::invalid_argument("capacity: need at least source and destination");
    detail::LinkIndex ix(n);
    const int L = ix.n_links();
    const int lambda_base = 0;
    const int flow_base = L;

    lp::LinearProgram prog(2 * L);
    for (int e = 0; e < L; ++e) {
        const auto [i, j] = ix.links[static_cast<std::size_t>(e)];
        prog.set_name(e, "lam(" + std::to_string(i) + "->" + std::to_string(j) + ")");
        prog.set_name(flow_base + e, "F(" + std::to_string(i) + "->" + std::to_string(j) + ")");
    }

    std::vector<double> obj(static_cast<std::size_t>(2 * L), 0.0);
    for (int i = 0; i + 1 < n; ++i)
        obj[static_cast<std::size_t>(flow_base + ix.id(i, n - 1))] = 1.0;
    prog.set_objective(std::move(obj));

    // F <= lambda * l per link
    for (int e = 0; e < L; ++e) {
        const auto [i, j] = ix.links[static_cast<std::size_t>(e)];
        std::vector<double> row(static_cast<std::size_t>(2 * L), 0.0);
        row[static_cast<std::size_t>(flow_base + e)] = 1.0;
        row[static_cast<std::size_t>(lambda_base + e)] =
            -gm.cap[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        prog.add_constraint(std::move(row), lp::Relation::LessEq, 0.0);
    }
    // flow conservation at each relay
    for (int r = 1; r + 1 < n; ++r) {
        std::vector<double> row(static_cast<std::size_t>(2 * L), 0.0);
        for (int j = 1; j < n; ++j)
            if (j != r) row[static_cast<std::size_t>(flow_base + ix.id(r, j))] += 1.0;
        for (int k = 0; k + 1 < n; ++k)
            if (k != r) row[static_cast<std::size_t>(flow_base + ix.id(k, r))] -= 1.0;
        prog.add_constraint(std::move(row), lp::Relation::Equal, 0.0);
    }
    detail::add_beam_budget_rows(prog, ix, lambda_base);

    for (const ScheduleConstraint& c : extra) {
        std::vector<double> row(static_cast<std::size_t>(2 * L), 0.0);
        for (const auto& t : c.terms)
            row[static_cast<std::size_t>(lambda_base + ix.id(t.from, t.to))] += t.coeff;
        prog.add_constraint(std::move(row), c.rel, c.rhs);
    }
    return prog;
}

inline CapacityResult flow_capacity_constrained(const LinkGainMatrix& gm,
                                                const std::vector<ScheduleConstraint>& extra,
                                                const lp::SolveOptions& opt = {}) {
    const int n = gm.n_nodes;
    detail::LinkIndex ix(n);
    const int L = ix.n_links();
    const int lambda_base = 0;
    const int flow_base = L;

    const lp::Solution sol = lp::solve(flow_program(gm, extra), opt);
    if (sol.status != lp::Status::Optimal)
        throw std::runtime_error("capacity: flow program unexpectedly " +
                                 std::string(sol.status == lp::Status::Infeasible ? "infeasible" : "unbounded"));

    CapacityResult res;
    res.capacity = sol.objective;
    res.formulation = Formulation::Flow;
    res.lp_iterations = sol.iterations;
    res.schedule.n_nodes = n;
    res.schedule.lambda.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    FlowMatrix fm;
    fm.n_nodes = n;
    fm.F.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int e = 0; e < L; ++e) {
        const auto [i, j] = ix.links[static_cast<std::size_t>(e)];
        res.schedule.lambda[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            sol.x[static_cast<std::size_t>(lambda_base + e)];
        fm.F[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            sol.x[static_cast<std::size_t>(flow_base + e)];
    }
    res.flows = std::move(fm);
    return res;
}

inline CapacityResult flow_capacity(const LinkGainMatrix& gm, const lp::SolveOptions& opt = {}) {
    return flow_capacity_constrained(gm, {}, opt);
}

// Cut-set formulation: maximize the minimum cut value over schedules, one
// constraint per cut. Exact dual of the inner max-flow, so it matches
// flow_capacity; enumeration is capped at kCutLimit relays.
inline CapacityResult cutset_capacity(const LinkGainMatrix& gm, const lp::SolveOptions& opt = {}) {
    const int n = gm.n_nodes;
    if (n < 2) throw std::invalid_argument("capacity: need at least source and destination");
    const auto cuts = enumerate_cuts(n - 2);
    detail::LinkIndex ix(n);
    const int L = ix.n_links();
    const int alpha = L;

    lp::LinearProgram prog(L + 1);
    for (int e = 0; e < L; ++e) {
        const auto [i, j] = ix.links[static_cast<std::size_t>(e)];
        prog.set_name(e, "lam(" + std::to_string(i) + "->" + std::to_string(j) + ")");
    }
    prog.set_name(alpha, "alpha");
    prog.set_objective_coeff(alpha, 1.0);

    detail::add_beam_budget_rows(prog, ix, 0);
    for (const CutSet& cut : cuts) {
        std::vector<double> row(static_cast<std::size_t>(L + 1), 0.0);
        row[static_cast<std::size_t>(alpha)] = 1.0;
        for (int e = 0; e < L; ++e) {
            const auto [i, j] = ix.links[static_cast<std::size_t>(e)];
            if (cut.contains(i, n - 2) && !cut.contains(j, n - 2))
                row[static_cast<std::size_t>(e)] =
                    -gm.cap[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        prog.add_constraint(std::move(row), lp::Relation::LessEq, 0.0);
    }

    const lp::Solution sol = lp::solve(prog, opt);
    if (sol.status != lp::Status::Optimal)
        throw std::runtime_error("capacity: cut-set program did not solve");

    CapacityResult res;
    res.capacity = sol.x[static_cast<std::size_t>(alpha)];
    res.formulation = Formulation::CutSet;
    res.lp_iterations = sol.iterations;
    res.schedule.n_nodes = n;
    res.schedule.lambda.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int e = 0; e < L; ++e) {
        const auto [i, j] = ix.links[static_cast<std::size_t>(e)];
        res.schedule.lambda[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            sol.x[static_cast<std::size_t>(e)];
    }
    return res;
}

// The three cut bounds of a symmetric two-relay network as functions of the
// cross-link activation share lambda2 (near share is 1 - lambda2):
//   near/cross cuts:   (1-lambda2)*l1 + lambda2*l2
//   relay-pair cut:    (1-lambda2)*l3 + 2*lambda2*l2
//   double-near cut:   2*(1-lambda2)*l1
inline double cut_bound_near(const SymmetricGeometry& g, double lambda2) {
    return (1.0 - lambda2) * g.l1 + lambda2 * g.l2;
}
inline double cut_bound_relay(const SymmetricGeometry& g, double lambda2) {
    return (1.0 - lambda2) * g.l3 + 2.0 * lambda2 * g.l2;
}
inline double cut_bound_double_near(const SymmetricGeometry& g, double lambda2) {
    return 2.0 * (1.0 - lambda2) * g.l1;
}
inline double min_cut_bound(const SymmetricGeometry& g, double lambda2) {
    return std::min({cut_bound_near(g, lambda2), cut_bound_relay(g, lambda2),
                     cut_bound_double_near(g, lambda2)});
}

struct ReducedCapacity {
    double capacity = 0.0;
    double lambda2_star = 0.0;
};

// Analytic max-min over lambda2 in [0,1]: the bounds are linear, so the
// optimum sits at an endpoint or a pairwise intersection. Ties break toward
// the smaller lambda2.
inline ReducedCapacity symmetric_maxmin_capacity(const SymmetricGeometry& g) {
    if (!(g.beta > 0.0) || g.beta >= 0.5)
        throw std::invalid_argument("reduced capacity: beta must lie in (0, 1/2)");
    std::vector<double> candidates{0.0, 1.0};
    auto add_intersection = [&candidates](double num, double den) {
        if (den == 0.0) return;
        const double lam = num / den;
        if (lam > 0.0 && lam < 1.0) candidates.push_back(lam);
    };
    add_intersection(g.l1 - g.l3, g.l1 + g.l2 - g.l3);          // near vs relay-pair
    add_intersection(g.l1, g.l1 + g.l2);                        // near vs double-near
    add_intersection(2.0 * g.l1 - g.l3, 2.0 * g.l1 + 2.0 * g.l2 - g.l3);  // relay-pair vs double-near
    std::sort(candidates.begin(), candidates.end());

    ReducedCapacity best{-lp::kInfinity, 0.0};
    for (double lam : candidates) {
        const double v = min_cut_bound(g, lam);
        if (v > best.capacity) best = ReducedCapacity{v, lam};
    }
    return best;
}

// Time-sharing over the four source-destination paths of the symmetric
// two-relay network: direct, via relay 1, via relay 2 (same share by
// symmetry) and via both relays. Fractions are x1, x2 (= x3), x4.
struct PathAllocation {
    double x1 = 0.0, x2 = 0.0, x4 = 0.0;
    double cap_direct = 0.0;      // path capacity, direct link
    double cap_single = 0.0;      // via one relay (either one)
    double cap_double = 0.0;      // via both relays

    double x3() const { return x2; }
    // per-node activation budgets implied by the allocation
    double source_usage(const SymmetricGeometry& g) const {
        return x1 + x2 * (g.l2 / g.l1 + 1.0) + x4 * (g.l3 / g.l1);
    }
    double relay1_usage() const { return x2 + x4; }
};

struct PathCapacityResult {
    PathAllocation alloc;
    double capacity = 0.0;
    bool routing = false;  // no single-relay or direct usage
    int lp_iterations = 0;
};

namespace detail {

inline lp::LinearProgram build_path_program(const SymmetricGeometry& g) {
    if (!(g.beta > 0.0) || g.beta >= 0.5)
        throw std::invalid_argument("path capacity: beta must lie in (0, 1/2)");
    if (!std::isfinite(g.l3)) throw std::invalid_argument("path capacity: inter-relay capacity must be finite");
    lp::LinearProgram prog(3, {"x1", "x2", "x4"});
    prog.set_objective({g.l4, 2.0 * g.l2, g.l3});
    prog.add_constraint({1.0, g.l2 / g.l1 + 1.0, g.l3 / g.l1}, lp::Relation::LessEq, 1.0);  // source beams
    prog.add_constraint({0.0, 1.0, 1.0}, lp::Relation::LessEq, 1.0);                        // relay beams
    return prog;
}

}  // namespace detail

inline constexpr double kRoutingShareTol = 1e-7;

inline PathCapacityResult path_capacity(const SymmetricGeometry& g, bool force_zero_direct = false,
                                        const lp::SolveOptions& opt = {}) {
    lp::LinearProgram prog = detail::build_path_program(g);
    if (force_zero_direct) prog.set_bounds(0, 0.0, 0.0);
    const lp::Solution sol = lp::solve(prog, opt);
    if (sol.status != lp::Status::Optimal)
        throw std::runtime_error("capacity: path program did not solve");
    PathCapacityResult res;
    res.alloc.x1 = sol.x[0];
    res.alloc.x2 = sol.x[1];
    res.alloc.x4 = sol.x[2];
    res.alloc.cap_direct = g.l4;
    res.alloc.cap_single = g.l2;
    res.alloc.cap_double = g.l3;
    res.capacity = sol.objective;
    res.routing = (res.alloc.x1 + 2.0 * res.alloc.x2) <= kRoutingShareTol;
    res.lp_iterations = sol.iterations;
    return res;
}

// Dual of the path program: min v1+v2 with one equality per path variable
// (s1, s2, s3 are the dual slacks). At the reduced optimum the certificate
// objective equals the path-program optimum and complementary slackness
// holds against the primal allocation.
struct DualCertificate {
    double v1 = 0.0, v2 = 0.0;
    double s1 = 0.0, s2 = 0.0, s3 = 0.0;
    double objective = 0.0;
    int lp_iterations = 0;
};

inline DualCertificate path_dual_certificate(const SymmetricGeometry& g, const lp::SolveOptions& opt = {}) {
    if (!(g.beta > 0.0) || g.beta >= 0.5)
        throw std::invalid_argument("path dual: beta must lie in (0, 1/2)");
    lp::LinearProgram prog(5, {"v1", "v2", "s1", "s2", "s3"});
    prog.set_objective({-1.0, -1.0, 0.0, 0.0, 0.0});
    prog.add_constraint({1.0, 0.0, -1.0, 0.0, 0.0}, lp::Relation::Equal, g.l4);
    prog.add_constraint({g.l2 / g.l1 + 1.0, 1.0, 0.0, -1.0, 0.0}, lp::Relation::Equal, 2.0 * g.l2);
    prog.add_constraint({g.l3 / g.l1, 1.0, 0.0, 0.0, -1.0}, lp::Relation::Equal, g.l3);
    const lp::Solution sol = lp::solve(prog, opt);
    if (sol.status != lp::Status::Optimal)
        throw std::runtime_error("capacity: dual program did not solve");
    DualCertificate cert;
    cert.v1 = sol.x[0];
    cert.v2 = sol.x[1];
    cert.s1 = sol.x[2];
    cert.s2 = sol.x[3];
    cert.s3 = sol.x[4];
    cert.objective = -sol.objective;
    cert.lp_iterations = sol.iterations;
    return cert;
}

// Structural properties of optimal schedules, checked by value
// preservation: re-solve the flow program with the property imposed as
// linear constraints and compare optima. "Exists an optimal solution with
// property X" then reads "imposing X does not change the optimum".
enum class OptimalProperty {
    SymmetricSchedule,   // lambda symmetry, idle reverse/direct links, saturated budgets
    CrossActivationTie,  // relay1->destination activation equals source->relay2
};

struct PropertyCheck {
    double unconstrained = 0.0;
    double constrained = 0.0;
    bool holds = false;
};

namespace detail {

inline bool is_symmetric_two_relay(const LinkGainMatrix& gm, double rel_tol = 1e-9) {
    if (gm.n_nodes != 4) return false;
    const double d = gm.source_destination_distance();
    return std::fabs(gm.dist[0][1] - gm.dist[2][3]) <= rel_tol * d &&
           std::fabs(gm.dist[0][2] - gm.dist[1][3]) <= rel_tol * d;
}

}  // namespace detail

inline std::vector<ScheduleConstraint> property_constraints(OptimalProperty prop) {
    using C = ScheduleConstraint;
    switch (prop) {
        case OptimalProperty::SymmetricSchedule:
            return {
                C{{{0, 1, 1.0}, {2, 3, -1.0}}, lp::Relation::Equal, 0.0},  // near links equal
                C{{{0, 2, 1.0}, {1, 3, -1.0}}, lp::Relation::Equal, 0.0},  // cross links equal
                C{{{2, 1, 1.0}}, lp::Relation::Equal, 0.0},                // reverse inter-relay idle
                C{{{0, 2, 1.0}, {1, 2, 1.0}}, lp::Relation::Equal, 1.0},   // relay2 receive budget saturated
                C{{{0, 3, 1.0}}, lp::Relation::Equal, 0.0},                // direct link idle
                C{{{0, 1, 1.0}, {0, 2, 1.0}}, lp::Relation::Equal, 1.0},   // source transmit budget saturated
            };
        case OptimalProperty::CrossActivationTie:
            return {C{{{1, 3, 1.0}, {0, 2, -1.0}}, lp::Relation::Equal, 0.0}};
    }
    throw std::invalid_argument("capacity: unknown property");
}

inline PropertyCheck verify_optimal_solution_properties(const LinkGainMatrix& gm, OptimalProperty prop,
                                                        double value_tol = 1e-8) {
    if (gm.n_nodes != 4) throw std::invalid_argument("property check: needs a two-relay network");
    if (prop == OptimalProperty::SymmetricSchedule) {
        if (!detail::is_symmetric_two_relay(gm))
            throw std::invalid_argument("property check: schedule symmetry requires a symmetric topology");
        const double s = gm.params.gamma / std::pow(gm.source_destination_distance(), gm.params.a);
        if (!(s > std::pow(3.0, gm.params.a)))
            throw std::invalid_argument("property check: requires gamma/d^a > 3^a");
    }
    PropertyCheck check;
    check.unconstrained = flow_capacity(gm).capacity;
    check.constrained = flow_capacity_constrained(gm, property_constraints(prop)).capacity;
    check.holds = std::fabs(check.unconstrained - check.constrained) <= value_tol;
    return check;
}

}  // namespace one21
