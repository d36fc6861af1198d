#pragma once

// Test-only LP oracles, kept independent of the solver internals: a dense
// vertex enumerator for small problems and a single-variable local
// optimality certificate.

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "h2plan/lp.hpp"

namespace h2plan::test {

struct OracleVertex {
    double objective;
    std::vector<double> point;
};

namespace oracle_detail {

// Solves the n x n system M z = r by Gaussian elimination with partial
// pivoting; returns false when (numerically) singular.
inline bool dense_solve(std::vector<std::vector<double>> M, std::vector<double> r,
                        std::vector<double>& z) {
    const std::size_t n = r.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(M[i][k]) > std::fabs(M[piv][k])) piv = i;
        if (std::fabs(M[piv][k]) < 1e-10) return false;
        std::swap(M[piv], M[k]);
        std::swap(r[piv], r[k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = M[i][k] / M[k][k];
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) M[i][j] -= f * M[k][j];
            r[i] -= f * r[k];
        }
    }
    z.assign(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double s = r[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= M[k][j] * z[j];
        z[k] = s / M[k][k];
    }
    return true;
}

inline bool feasible_point(const LpProblem& p, const std::vector<double>& x, double tol) {
    for (int j = 0; j < p.num_variables(); ++j) {
        if (x[static_cast<std::size_t>(j)] < p.lower(j) - tol) return false;
        if (x[static_cast<std::size_t>(j)] > p.upper(j) + tol) return false;
    }
    for (int i = 0; i < p.num_constraints(); ++i) {
        double act = 0.0;
        for (const LpTerm& t : p.row(i)) act += t.coef * x[static_cast<std::size_t>(t.var)];
        const double resid = act - p.row_rhs(i);
        switch (p.row_sense(i)) {
            case Sense::Equal:
                if (std::fabs(resid) > tol) return false;
                break;
            case Sense::LessEqual:
                if (resid > tol) return false;
                break;
            case Sense::GreaterEqual:
                if (resid < -tol) return false;
                break;
        }
    }
    return true;
}

} // namespace oracle_detail

/// Exhaustively enumerates candidate vertices (every choice of n active
/// constraints among rows and finite bounds), returning the best feasible
/// one. Suitable for problems with a handful of variables; a feasible bounded
/// problem with all variables boxed always yields a vertex.
inline std::optional<OracleVertex> enumerate_optimum(const LpProblem& p) {
    const int n = p.num_variables();
    struct Plane {
        std::vector<double> a;
        double rhs;
    };
    std::vector<Plane> planes;
    for (int i = 0; i < p.num_constraints(); ++i) {
        Plane pl;
        pl.a.assign(static_cast<std::size_t>(n), 0.0);
        for (const LpTerm& t : p.row(i)) pl.a[static_cast<std::size_t>(t.var)] += t.coef;
        pl.rhs = p.row_rhs(i);
        planes.push_back(std::move(pl));
    }
    for (int j = 0; j < n; ++j) {
        if (p.lower(j) != -kInfinity) {
            Plane pl;
            pl.a.assign(static_cast<std::size_t>(n), 0.0);
            pl.a[static_cast<std::size_t>(j)] = 1.0;
            pl.rhs = p.lower(j);
            planes.push_back(std::move(pl));
        }
        if (p.upper(j) != kInfinity) {
            Plane pl;
            pl.a.assign(static_cast<std::size_t>(n), 0.0);
            pl.a[static_cast<std::size_t>(j)] = 1.0;
            pl.rhs = p.upper(j);
            planes.push_back(std::move(pl));
        }
    }

    const std::size_t total = planes.size();
    std::optional<OracleVertex> best;
    std::vector<std::size_t> idx(static_cast<std::size_t>(n));
    // Iterate all C(total, n) active sets.
    std::vector<std::size_t> comb;
    comb.reserve(static_cast<std::size_t>(n));
    auto consider = [&](const std::vector<std::size_t>& chosen) {
        std::vector<std::vector<double>> M;
        std::vector<double> r;
        for (std::size_t c : chosen) {
            M.push_back(planes[c].a);
            r.push_back(planes[c].rhs);
        }
        std::vector<double> x;
        if (!oracle_detail::dense_solve(std::move(M), std::move(r), x)) return;
        if (!oracle_detail::feasible_point(p, x, 1e-7)) return;
        double obj = 0.0;
        for (int j = 0; j < n; ++j) obj += p.objective_coef(j) * x[static_cast<std::size_t>(j)];
        if (!best || obj < best->objective - 1e-12) best = OracleVertex{obj, x};
    };
    // Simple recursive combination walk.
    struct Rec {
        std::size_t total;
        int n;
        std::vector<std::size_t> cur;
        decltype(consider)& fn;
        void walk(std::size_t from) {
            if (static_cast<int>(cur.size()) == n) {
                fn(cur);
                return;
            }
            for (std::size_t i = from; i < total; ++i) {
                cur.push_back(i);
                walk(i + 1);
                cur.pop_back();
            }
        }
    } rec{total, n, {}, consider};
    rec.walk(0);
    return best;
}

/// Certificate from the module contract: starting from `x`, no move of a
/// single variable that stays feasible may improve the objective by more
/// than `tol`.
inline bool locally_optimal(const LpProblem& p, const std::vector<double>& x, double tol) {
    for (int j = 0; j < p.num_variables(); ++j) {
        double dmin = p.lower(j) - x[static_cast<std::size_t>(j)];
        double dmax = p.upper(j) - x[static_cast<std::size_t>(j)];
        for (int i = 0; i < p.num_constraints(); ++i) {
            double a = 0.0, act = 0.0;
            for (const LpTerm& t : p.row(i)) {
                act += t.coef * x[static_cast<std::size_t>(t.var)];
                if (t.var == j) a += t.coef;
            }
            if (a == 0.0) continue;
            const double resid = p.row_rhs(i) - act;
            switch (p.row_sense(i)) {
                case Sense::Equal:
                    dmin = std::max(dmin, std::min(0.0, resid / a));
                    dmax = std::min(dmax, std::max(0.0, resid / a));
                    break;
                case Sense::LessEqual:
                    if (a > 0.0) dmax = std::min(dmax, (resid + 1e-9) / a);
                    else dmin = std::max(dmin, (resid + 1e-9) / a);
                    break;
                case Sense::GreaterEqual:
                    if (a > 0.0) dmin = std::max(dmin, (resid - 1e-9) / a);
                    else dmax = std::min(dmax, (resid - 1e-9) / a);
                    break;
            }
        }
        const double c = p.objective_coef(j);
        if (c > 0.0 && dmin < 0.0 && -c * dmin > tol) return false;
        if (c < 0.0 && dmax > 0.0 && -c * dmax > tol) return false;
    }
    return true;
}

} // namespace h2plan::test
