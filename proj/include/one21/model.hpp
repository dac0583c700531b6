#pragma once

// Network geometry and the path-loss propagation model.
//
// Link capacities in bits per channel use:
//   approximate:  l = log2(gamma / d^a)
//   exact:        l = log2(1 + gamma / d^a)
// where gamma > 0 subsumes transmit power, beam gains and wavelength, and
// a > 1 is the path-loss exponent. The approximate form is within one bit
// of the exact one whenever gamma / d^a > 1; entries where that ratio is
// <= 1 are kept but flagged invalid for the approximation.
//
// Node indexing everywhere: 0 = source, 1..N = relays, N+1 = destination.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace one21 {

enum class CapacityMode { Approx, Exact };

struct PropagationParams {
    double gamma = 1e6;   // dimensionless SNR-scale constant
    double a = 2.0;       // path-loss exponent, must be > 1
    CapacityMode mode = CapacityMode::Approx;
    double min_distance = 0.0;  // clamp floor for coincident nodes; 0 = auto

    void validate() const {
        if (!std::isfinite(gamma) || gamma <= 0.0)
            throw std::invalid_argument("params: gamma must be finite and positive");
        if (!std::isfinite(a) || a <= 1.0)
            throw std::invalid_argument("params: path-loss exponent must be > 1");
        if (!std::isfinite(min_distance) || min_distance < 0.0)
            throw std::invalid_argument("params: min_distance must be >= 0");
    }
};

// Auto min_distance resolves to 1e-9 of the source-destination distance.
inline double effective_min_distance(const PropagationParams& params, double d_ref) {
    if (params.min_distance > 0.0) return params.min_distance;
    return 1e-9 * d_ref;
}

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct Rect {
    double x0 = 0.0, x1 = 0.0;
    double y0 = 0.0, y1 = 0.0;

    void validate() const {
        if (x1 < x0 || y1 < y0) throw std::invalid_argument("region: bounds out of order");
    }
};

inline double distance(const Point& p, const Point& q) {
    return std::hypot(p.x - q.x, p.y - q.y);
}

struct Topology {
    Point source;
    Point destination;
    std::vector<Point> relays;

    int n_relays() const { return static_cast<int>(relays.size()); }
    int n_nodes() const { return n_relays() + 2; }

    const Point& node(int i) const {
        if (i == 0) return source;
        if (i == n_nodes() - 1) return destination;
        if (i < 1 || i > n_relays()) throw std::invalid_argument("topology: node index out of range");
        return relays[static_cast<std::size_t>(i) - 1];
    }

    double source_destination_distance() const { return distance(source, destination); }
};

// Computed as log2(gamma) - a*log2(d) so tiny clamped distances cannot
// overflow the quotient.
inline double link_capacity(double dist, const PropagationParams& params) {
    params.validate();
    if (!std::isfinite(dist) || dist < 0.0)
        throw std::invalid_argument("link_capacity: distance must be finite and nonnegative");
    double floor = params.min_distance;
    if (floor <= 0.0 && dist <= 0.0)
        throw std::invalid_argument("link_capacity: zero distance requires a positive min_distance");
    const double d = std::max(dist, floor);
    const double approx = std::log2(params.gamma) - params.a * std::log2(d);
    if (params.mode == CapacityMode::Approx) return approx;
    const double ratio = params.gamma / std::pow(d, params.a);
    if (!std::isfinite(ratio) || ratio > 0x1p53) return approx;  // log2(1+r) == log2(r) at double precision
    return std::log2(1.0 + ratio);
}

struct LinkGainMatrix {
    int n_nodes = 0;
    std::vector<std::vector<double>> dist;  // pairwise, clamped, zero diagonal
    std::vector<std::vector<double>> cap;   // bits per channel use
    std::vector<std::vector<bool>> valid;   // approximation validity (gamma/d^a > 1)
    PropagationParams params;

    int n_relays() const { return n_nodes - 2; }
    double source_destination_distance() const {
        return dist[0][static_cast<std::size_t>(n_nodes) - 1];
    }
};

inline LinkGainMatrix gain_matrix(const Topology& topo, const PropagationParams& params) {
    params.validate();
    const double d_ref = topo.source_destination_distance();
    const double floor = effective_min_distance(params, d_ref);
    if (!(floor > 0.0) || d_ref < floor)
        throw std::invalid_argument("gain_matrix: source and destination coincide");

    const int n = topo.n_nodes();
    LinkGainMatrix gm;
    gm.n_nodes = n;
    gm.params = params;
    gm.dist.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    gm.cap.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    gm.valid.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), true));
    PropagationParams enforced = params;
    enforced.min_distance = floor;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double d = std::max(distance(topo.node(i), topo.node(j)), floor);
            gm.dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = d;
            gm.cap[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = link_capacity(d, enforced);
            const double approx = std::log2(params.gamma) - params.a * std::log2(d);
            gm.valid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = approx > 0.0;
        }
    }
    return gm;
}

// Project the relays onto the axis through source and destination. Pairwise
// distances never increase, so the approximate capacity never decreases.
inline Topology project_topology(const Topology& topo) {
    const double len = topo.source_destination_distance();
    if (len <= 0.0) throw std::invalid_argument("project_topology: source and destination coincide");
    const double ux = (topo.destination.x - topo.source.x) / len;
    const double uy = (topo.destination.y - topo.source.y) / len;
    Topology out = topo;
    for (Point& r : out.relays) {
        const double t = (r.x - topo.source.x) * ux + (r.y - topo.source.y) * uy;
        r = Point{topo.source.x + t * ux, topo.source.y + t * uy};
    }
    return out;
}

// Projected two-relay description: relay 1 at beta1*d from the source,
// relay 2 at beta2*d from the destination, relay 1 not to the right of
// relay 2.
struct ProjectedPair {
    double beta1 = 0.0;
    double beta2 = 0.0;
    double d = 0.0;

    void validate() const {
        if (!(d > 0.0)) throw std::invalid_argument("projected pair: d must be positive");
        if (beta1 < 0.0 || beta2 < 0.0 || beta1 > 1.0 || beta2 > 1.0)
            throw std::invalid_argument("projected pair: fractions must lie in [0,1]");
        if (beta1 * d > d - beta2 * d)
            throw std::invalid_argument("projected pair: relay 1 lies to the right of relay 2");
    }
};

// Symmetric projected two-relay geometry, approximate-mode link capacities:
//   l1 = log2(gamma/(beta*d)^a)      source->relay1 and relay2->destination
//   l2 = log2(gamma/((1-beta)*d)^a)  source->relay2 and relay1->destination
//   l3 = log2(gamma/((1-2*beta)*d)^a)  between the relays
//   l4 = log2(gamma/d^a)             direct source->destination
struct SymmetricGeometry {
    double beta = 0.0;
    double d = 0.0;
    double l1 = 0.0, l2 = 0.0, l3 = 0.0, l4 = 0.0;
    double s = 0.0;  // gamma / d^a
    double a = 0.0;
};

inline SymmetricGeometry make_symmetric_geometry(double beta, double d, const PropagationParams& params) {
    params.validate();
    if (!(d > 0.0)) throw std::invalid_argument("symmetric geometry: d must be positive");
    if (!(beta > 0.0) || beta > 0.5)
        throw std::invalid_argument("symmetric geometry: beta must lie in (0, 1/2]");
    const double floor = effective_min_distance(params, d);
    PropagationParams approx = params;
    approx.mode = CapacityMode::Approx;
    approx.min_distance = floor;
    SymmetricGeometry g;
    g.beta = beta;
    g.d = d;
    g.a = params.a;
    g.l1 = link_capacity(beta * d, approx);
    g.l2 = link_capacity((1.0 - beta) * d, approx);
    g.l3 = link_capacity((1.0 - 2.0 * beta) * d, approx);
    g.l4 = link_capacity(d, approx);
    g.s = params.gamma / std::pow(d, params.a);
    return g;
}

// Symmetrization: move the inner relay outward so both sit at fraction
// max(beta1, beta2). Requires both relays in their own half so the result
// is a valid symmetric geometry; the symmetric network achieves at least
// the capacity of the asymmetric one.
inline double symmetrize_beta(const ProjectedPair& pair) {
    pair.validate();
    const double beta = std::max(pair.beta1, pair.beta2);
    if (beta > 0.5)
        throw std::invalid_argument("symmetrize: max(beta1, beta2) must not exceed 1/2");
    return beta;
}

inline SymmetricGeometry symmetrize(const ProjectedPair& pair, const PropagationParams& params) {
    return make_symmetric_geometry(symmetrize_beta(pair), pair.d, params);
}

// Relays at fractions beta and 1-beta of the axis.
inline Topology symmetric_topology(double beta, double d) {
    if (!(d > 0.0)) throw std::invalid_argument("topology: d must be positive");
    if (beta < 0.0 || beta > 0.5) throw std::invalid_argument("topology: beta must lie in [0, 1/2]");
    return Topology{{0.0, 0.0}, {d, 0.0}, {{beta * d, 0.0}, {(1.0 - beta) * d, 0.0}}};
}

inline Topology asymmetric_topology(const ProjectedPair& pair) {
    pair.validate();
    return Topology{{0.0, 0.0},
                    {pair.d, 0.0},
                    {{pair.beta1 * pair.d, 0.0}, {(1.0 - pair.beta2) * pair.d, 0.0}}};
}

// One relay as close to the source as possible, the other as close to the
// destination as possible, at relative offset eps_rel.
inline Topology make_theorem_topology(double d, double eps_rel) {
    if (!(d > 0.0)) throw std::invalid_argument("topology: d must be positive");
    if (!(eps_rel > 0.0) || eps_rel >= 0.5)
        throw std::invalid_argument("topology: eps_rel must lie in (0, 1/2)");
    return symmetric_topology(eps_rel, d);
}

// n relays equally spaced on the axis (hop length d/(n+1)).
inline Topology make_line_topology(double d, int n_relays) {
    if (!(d > 0.0)) throw std::invalid_argument("topology: d must be positive");
    if (n_relays < 0) throw std::invalid_argument("topology: relay count must be nonnegative");
    Topology t{{0.0, 0.0}, {d, 0.0}, {}};
    t.relays.reserve(static_cast<std::size_t>(n_relays));
    for (int i = 1; i <= n_relays; ++i)
        t.relays.push_back({d * static_cast<double>(i) / (n_relays + 1), 0.0});
    return t;
}

}  // namespace one21
