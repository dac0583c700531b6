#pragma once

// Dense linear programs and a two-phase primal simplex solver.
//
// The solver targets the small, well-conditioned programs this library
// produces (tens of variables, tens of constraints). It favors determinism
// over speed: Bland's pivoting rule in both phases, no perturbation, no
// scaling, and reduced costs recomputed from the tableau at every
// iteration. Identical inputs produce bit-identical solutions.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace one21::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { LessEq, Equal, GreaterEq };
enum class Status { Optimal, Infeasible, Unbounded };

struct Constraint {
    std::vector<double> coeffs;
    Relation rel = Relation::LessEq;
    double rhs = 0.0;
};

// Maximization problem: max c.x subject to linear constraints and
// per-variable bounds. Default bounds are [0, +inf).
class LinearProgram {
public:
    explicit LinearProgram(int n_vars, std::vector<std::string> names = {})
        : objective_(static_cast<std::size_t>(check_size(n_vars)), 0.0),
          lower_(static_cast<std::size_t>(n_vars), 0.0),
          upper_(static_cast<std::size_t>(n_vars), kInfinity),
          names_(std::move(names)) {
        if (!names_.empty() && names_.size() != static_cast<std::size_t>(n_vars))
            throw std::invalid_argument("lp: name list does not match variable count");
        if (names_.empty()) {
            names_.reserve(static_cast<std::size_t>(n_vars));
            for (int i = 0; i < n_vars; ++i) names_.push_back("x" + std::to_string(i));
        }
    }

    int n_vars() const { return static_cast<int>(objective_.size()); }

    void set_objective(std::vector<double> c) {
        require_dim(c.size());
        require_finite(c);
        objective_ = std::move(c);
    }

    void set_objective_coeff(int var, double c) {
        require_var(var);
        if (!std::isfinite(c)) throw std::invalid_argument("lp: non-finite objective coefficient");
        objective_[static_cast<std::size_t>(var)] = c;
    }

    void add_constraint(std::vector<double> coeffs, Relation rel, double rhs) {
        require_dim(coeffs.size());
        require_finite(coeffs);
        if (!std::isfinite(rhs)) throw std::invalid_argument("lp: non-finite right-hand side");
        constraints_.push_back(Constraint{std::move(coeffs), rel, rhs});
    }

    // lower may be -inf, upper may be +inf; lower > upper is rejected.
    void set_bounds(int var, double lower, double upper) {
        require_var(var);
        if (std::isnan(lower) || std::isnan(upper) || lower > upper)
            throw std::invalid_argument("lp: invalid bounds");
        lower_[static_cast<std::size_t>(var)] = lower;
        upper_[static_cast<std::size_t>(var)] = upper;
    }

    void set_name(int var, std::string name) {
        require_var(var);
        names_[static_cast<std::size_t>(var)] = std::move(name);
    }

    const std::vector<double>& objective() const { return objective_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    double lower(int var) const { return lower_[static_cast<std::size_t>(var)]; }
    double upper(int var) const { return upper_[static_cast<std::size_t>(var)]; }
    const std::string& name(int var) const { return names_[static_cast<std::size_t>(var)]; }

private:
    static int check_size(int n) {
        if (n <= 0) throw std::invalid_argument("lp: variable count must be positive");
        return n;
    }
    void require_var(int var) const {
        if (var < 0 || var >= n_vars()) throw std::invalid_argument("lp: variable index out of range");
    }
    void require_dim(std::size_t s) const {
        if (s != objective_.size()) throw std::invalid_argument("lp: coefficient vector dimension mismatch");
    }
    static void require_finite(const std::vector<double>& v) {
        for (double c : v)
            if (!std::isfinite(c)) throw std::invalid_argument("lp: non-finite coefficient");
    }

    std::vector<double> objective_;
    std::vector<Constraint> constraints_;
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<std::string> names_;
};

struct SolveOptions {
    double feas_tol = 1e-9;
    double opt_tol = 1e-9;
    int max_iterations = 10000;
};

struct Solution {
    Status status = Status::Optimal;
    std::vector<double> x;
    double objective = 0.0;
    int iterations = 0;
};

namespace detail {

inline constexpr double kPivotTol = 1e-11;

struct Tableau {
    // rows: m x (n_cols + 1), last column is the RHS
    std::vector<std::vector<double>> rows;
    std::vector<int> basis;
    int n_cols = 0;

    double& at(int i, int j) { return rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    double at(int i, int j) const { return rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    int m() const { return static_cast<int>(rows.size()); }
    double rhs(int i) const { return at(i, n_cols); }

    void pivot(int r, int s) {
        auto& prow = rows[static_cast<std::size_t>(r)];
        const double inv = 1.0 / prow[static_cast<std::size_t>(s)];
        for (double& v : prow) v *= inv;
        prow[static_cast<std::size_t>(s)] = 1.0;
        for (int i = 0; i < m(); ++i) {
            if (i == r) continue;
            auto& row = rows[static_cast<std::size_t>(i)];
            const double factor = row[static_cast<std::size_t>(s)];
            if (factor == 0.0) continue;
            for (int j = 0; j <= n_cols; ++j)
                row[static_cast<std::size_t>(j)] -= factor * prow[static_cast<std::size_t>(j)];
            row[static_cast<std::size_t>(s)] = 0.0;
        }
        basis[static_cast<std::size_t>(r)] = s;
    }
};

enum class PhaseOutcome { Optimal, Unbounded };

// Bland's rule: entering = lowest-index improving column, leaving = minimum
// ratio with ties broken toward the lowest basis index. Guarantees
// termination on degenerate programs.
inline PhaseOutcome run_simplex(Tableau& t, const std::vector<double>& costs,
                                const std::vector<char>& banned, const SolveOptions& opt,
                                int& iterations) {
    std::vector<double> cb(static_cast<std::size_t>(t.m()));
    for (;;) {
        for (int i = 0; i < t.m(); ++i)
            cb[static_cast<std::size_t>(i)] = costs[static_cast<std::size_t>(t.basis[static_cast<std::size_t>(i)])];
        int enter = -1;
        for (int j = 0; j < t.n_cols; ++j) {
            if (banned[static_cast<std::size_t>(j)]) continue;
            double d = costs[static_cast<std::size_t>(j)];
            for (int i = 0; i < t.m(); ++i) d -= cb[static_cast<std::size_t>(i)] * t.at(i, j);
            if (d > opt.opt_tol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return PhaseOutcome::Optimal;

        int leave = -1;
        double best_ratio = kInfinity;
        for (int i = 0; i < t.m(); ++i) {
            const double a = t.at(i, enter);
            if (a <= kPivotTol) continue;
            const double ratio = t.rhs(i) / a;
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && t.basis[static_cast<std::size_t>(i)] < t.basis[static_cast<std::size_t>(leave)])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0) return PhaseOutcome::Unbounded;

        if (++iterations > opt.max_iterations)
            throw std::runtime_error("lp: simplex iteration cap exceeded");
        t.pivot(leave, enter);
    }
}

}  // namespace detail

inline Solution solve(const LinearProgram& lp, const SolveOptions& opt = {}) {
    const int n = lp.n_vars();

    // Variable transform: every user variable becomes one or two nonnegative
    // columns. x = offset + sum(scale_c * y_c).
    struct Col {
        int var;
        double scale;
    };
    std::vector<Col> cols;
    std::vector<double> offset(static_cast<std::size_t>(n), 0.0);
    std::vector<std::pair<int, double>> upper_rows;  // (column, bound on y)
    for (int k = 0; k < n; ++k) {
        const double lo = lp.lower(k);
        const double hi = lp.upper(k);
        if (lo == -kInfinity && hi == kInfinity) {
            cols.push_back({k, 1.0});
            cols.push_back({k, -1.0});
        } else if (lo > -kInfinity) {
            offset[static_cast<std::size_t>(k)] = lo;
            cols.push_back({k, 1.0});
            if (hi < kInfinity) upper_rows.push_back({static_cast<int>(cols.size()) - 1, hi - lo});
        } else {
            // (-inf, hi]: substitute x = hi - y
            offset[static_cast<std::size_t>(k)] = hi;
            cols.push_back({k, -1.0});
        }
    }
    const int n_struct = static_cast<int>(cols.size());

    // Rows in the transformed variables, with nonnegative right-hand sides.
    struct Row {
        std::vector<double> a;
        Relation rel;
        double b;
    };
    std::vector<Row> rows;
    rows.reserve(lp.constraints().size() + upper_rows.size());
    for (const Constraint& c : lp.constraints()) {
        Row r{std::vector<double>(static_cast<std::size_t>(n_struct), 0.0), c.rel, c.rhs};
        for (int j = 0; j < n_struct; ++j)
            r.a[static_cast<std::size_t>(j)] =
                c.coeffs[static_cast<std::size_t>(cols[static_cast<std::size_t>(j)].var)] *
                cols[static_cast<std::size_t>(j)].scale;
        for (int k = 0; k < n; ++k)
            r.b -= c.coeffs[static_cast<std::size_t>(k)] * offset[static_cast<std::size_t>(k)];
        rows.push_back(std::move(r));
    }
    for (auto [col, ub] : upper_rows) {
        Row r{std::vector<double>(static_cast<std::size_t>(n_struct), 0.0), Relation::LessEq, ub};
        r.a[static_cast<std::size_t>(col)] = 1.0;
        rows.push_back(std::move(r));
    }
    double b_scale = 1.0;
    for (Row& r : rows) {
        if (r.b < 0.0) {
            for (double& v : r.a) v = -v;
            r.b = -r.b;
            if (r.rel == Relation::LessEq)
                r.rel = Relation::GreaterEq;
            else if (r.rel == Relation::GreaterEq)
                r.rel = Relation::LessEq;
        }
        b_scale = std::max(b_scale, r.b);
    }

    // Tableau layout: structural columns, one slack/surplus per inequality,
    // then one artificial per row that lacks an identity column.
    const int m = static_cast<int>(rows.size());
    int n_slack = 0;
    for (const Row& r : rows)
        if (r.rel != Relation::Equal) ++n_slack;
    std::vector<int> art_of_row(static_cast<std::size_t>(m), -1);
    int n_art = 0;
    for (int i = 0; i < m; ++i)
        if (rows[static_cast<std::size_t>(i)].rel != Relation::LessEq)
            art_of_row[static_cast<std::size_t>(i)] = n_art++;
    const int art_base = n_struct + n_slack;
    const int n_cols = n_struct + n_slack + n_art;

    detail::Tableau t;
    t.n_cols = n_cols;
    t.basis.assign(static_cast<std::size_t>(m), -1);
    t.rows.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(n_cols) + 1, 0.0));
    int slack = n_struct;
    for (int i = 0; i < m; ++i) {
        const Row& r = rows[static_cast<std::size_t>(i)];
        for (int j = 0; j < n_struct; ++j) t.at(i, j) = r.a[static_cast<std::size_t>(j)];
        t.at(i, n_cols) = r.b;
        if (r.rel == Relation::LessEq) {
            t.at(i, slack) = 1.0;
            t.basis[static_cast<std::size_t>(i)] = slack++;
        } else if (r.rel == Relation::GreaterEq) {
            t.at(i, slack++) = -1.0;
        }
        if (art_of_row[static_cast<std::size_t>(i)] >= 0) {
            const int a = art_base + art_of_row[static_cast<std::size_t>(i)];
            t.at(i, a) = 1.0;
            t.basis[static_cast<std::size_t>(i)] = a;
        }
    }

    Solution sol;
    std::vector<char> banned(static_cast<std::size_t>(n_cols), 0);

    if (n_art > 0) {
        std::vector<double> phase1(static_cast<std::size_t>(n_cols), 0.0);
        for (int j = art_base; j < n_cols; ++j) phase1[static_cast<std::size_t>(j)] = -1.0;
        detail::run_simplex(t, phase1, banned, opt, sol.iterations);
        double infeas = 0.0;
        for (int i = 0; i < t.m(); ++i)
            if (t.basis[static_cast<std::size_t>(i)] >= art_base) infeas += t.rhs(i);
        if (infeas > opt.feas_tol * b_scale) {
            sol.status = Status::Infeasible;
            return sol;
        }
        // Pivot remaining (degenerate) artificials out of the basis; rows
        // where that is impossible are redundant and get dropped.
        for (int i = t.m() - 1; i >= 0; --i) {
            if (t.basis[static_cast<std::size_t>(i)] < art_base) continue;
            int target = -1;
            for (int j = 0; j < art_base; ++j) {
                if (std::fabs(t.at(i, j)) > detail::kPivotTol) {
                    target = j;
                    break;
                }
            }
            if (target >= 0) {
                t.pivot(i, target);
            } else {
                t.rows.erase(t.rows.begin() + i);
                t.basis.erase(t.basis.begin() + i);
            }
        }
        for (int j = art_base; j < n_cols; ++j) banned[static_cast<std::size_t>(j)] = 1;
    }

    std::vector<double> phase2(static_cast<std::size_t>(n_cols), 0.0);
    for (int j = 0; j < n_struct; ++j)
        phase2[static_cast<std::size_t>(j)] =
            lp.objective()[static_cast<std::size_t>(cols[static_cast<std::size_t>(j)].var)] *
            cols[static_cast<std::size_t>(j)].scale;
    const auto outcome = detail::run_simplex(t, phase2, banned, opt, sol.iterations);
    if (outcome == detail::PhaseOutcome::Unbounded) {
        sol.status = Status::Unbounded;
        return sol;
    }

    std::vector<double> y(static_cast<std::size_t>(n_cols), 0.0);
    for (int i = 0; i < t.m(); ++i) y[static_cast<std::size_t>(t.basis[static_cast<std::size_t>(i)])] = t.rhs(i);
    sol.x = offset;
    for (int j = 0; j < n_struct; ++j)
        sol.x[static_cast<std::size_t>(cols[static_cast<std::size_t>(j)].var)] +=
            cols[static_cast<std::size_t>(j)].scale * y[static_cast<std::size_t>(j)];
    sol.objective = 0.0;
    for (int k = 0; k < n; ++k)
        sol.objective += lp.objective()[static_cast<std::size_t>(k)] * sol.x[static_cast<std::size_t>(k)];
    sol.status = Status::Optimal;
    return sol;
}

struct Diagnostics {
    double max_constraint_violation = 0.0;
    double max_bound_violation = 0.0;
};

inline Diagnostics verify_solution(const LinearProgram& lp, const Solution& sol) {
    if (sol.status != Status::Optimal) throw std::invalid_argument("lp: verify_solution needs an optimal solution");
    if (sol.x.size() != static_cast<std::size_t>(lp.n_vars()))
        throw std::invalid_argument("lp: solution dimension mismatch");
    Diagnostics d;
    for (const Constraint& c : lp.constraints()) {
        double v = -c.rhs;
        for (int k = 0; k < lp.n_vars(); ++k)
            v += c.coeffs[static_cast<std::size_t>(k)] * sol.x[static_cast<std::size_t>(k)];
        double viol = 0.0;
        switch (c.rel) {
            case Relation::LessEq: viol = std::max(0.0, v); break;
            case Relation::GreaterEq: viol = std::max(0.0, -v); break;
            case Relation::Equal: viol = std::fabs(v); break;
        }
        d.max_constraint_violation = std::max(d.max_constraint_violation, viol);
    }
    for (int k = 0; k < lp.n_vars(); ++k) {
        const double x = sol.x[static_cast<std::size_t>(k)];
        d.max_bound_violation = std::max(d.max_bound_violation, std::max(0.0, lp.lower(k) - x));
        d.max_bound_violation = std::max(d.max_bound_violation, std::max(0.0, x - lp.upper(k)));
    }
    return d;
}

// max_i |y_i * (a_i.x - b_i)| for a vector of constraint multipliers.
inline double complementary_slackness_residual(const LinearProgram& lp, const Solution& sol,
                                               const std::vector<double>& duals) {
    if (duals.size() != lp.constraints().size())
        throw std::invalid_argument("lp: one dual multiplier per constraint required");
    double residual = 0.0;
    for (std::size_t i = 0; i < duals.size(); ++i) {
        const Constraint& c = lp.constraints()[i];
        double slack = -c.rhs;
        for (int k = 0; k < lp.n_vars(); ++k)
            slack += c.coeffs[static_cast<std::size_t>(k)] * sol.x[static_cast<std::size_t>(k)];
        residual = std::max(residual, std::fabs(duals[i] * slack));
    }
    return residual;
}

// Debug dump, one constraint per line.
inline std::string to_text(const LinearProgram& lp) {
    std::ostringstream os;
    auto term = [&](double c, int k, bool first) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.12g", std::fabs(c));
        os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ")) << buf << " " << lp.name(k);
    };
    os << "maximize";
    bool first = true;
    for (int k = 0; k < lp.n_vars(); ++k) {
        if (lp.objective()[static_cast<std::size_t>(k)] == 0.0) continue;
        os << (first ? " " : "");
        term(lp.objective()[static_cast<std::size_t>(k)], k, first);
        first = false;
    }
    if (first) os << " 0";
    os << "\n";
    for (const Constraint& c : lp.constraints()) {
        first = true;
        for (int k = 0; k < lp.n_vars(); ++k) {
            if (c.coeffs[static_cast<std::size_t>(k)] == 0.0) continue;
            os << (first ? "  " : "");
            term(c.coeffs[static_cast<std::size_t>(k)], k, first);
            first = false;
        }
        if (first) os << "  0";
        const char* rel = c.rel == Relation::LessEq ? "<=" : (c.rel == Relation::Equal ? "=" : ">=");
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.12g", c.rhs);
        os << " " << rel << " " << buf << "\n";
    }
    for (int k = 0; k < lp.n_vars(); ++k) {
        if (lp.lower(k) == 0.0 && lp.upper(k) == kInfinity) continue;
        char lo[64], hi[64];
        std::snprintf(lo, sizeof(lo), "%.12g", lp.lower(k));
        std::snprintf(hi, sizeof(hi), "%.12g", lp.upper(k));
        os << "  " << lo << " <= " << lp.name(k) << " <= " << hi << "\n";
    }
    return os.str();
}

}  // namespace one21::lp
