#include <cmath>
#include <string>

#include "h2plan/errors.hpp"
#include "h2plan/lp.hpp"
#include "lp_internal.hpp"

namespace h2plan {

namespace {

// Enforces the solution contract: bounds within 1e-7 absolute, rows within
// 1e-6 relative of their right-hand side.
void verify(const LpProblem& p, const std::vector<double>& x) {
    for (int j = 0; j < p.num_variables(); ++j) {
        const double v = x[static_cast<std::size_t>(j)];
        const double tol = 1e-7 + 1e-9 * std::fabs(v);
        if (v < p.lower(j) - tol || v > p.upper(j) + tol)
            throw SolverNumericalError("variable " + std::to_string(j) + " violates its bounds: " +
                                       std::to_string(v));
    }
    const auto& offs = p.row_offsets();
    const auto& tvar = p.term_vars();
    const auto& tcoef = p.term_coefs();
    for (int i = 0; i < p.num_constraints(); ++i) {
        double act = 0.0, scale = 1.0;
        for (std::size_t k = offs[static_cast<std::size_t>(i)]; k < offs[static_cast<std::size_t>(i) + 1]; ++k) {
            const double term = tcoef[k] * x[static_cast<std::size_t>(tvar[k])];
            act += term;
            scale = std::max(scale, std::fabs(term));
        }
        const double rhs = p.row_rhs(i);
        scale = std::max(scale, std::fabs(rhs));
        const double tol = 1e-6 * scale;
        const double resid = act - rhs;
        bool ok = true;
        switch (p.row_sense(i)) {
            case Sense::Equal: ok = std::fabs(resid) <= tol; break;
            case Sense::LessEqual: ok = resid <= tol; break;
            case Sense::GreaterEqual: ok = resid >= -tol; break;
        }
        if (!ok)
            throw SolverNumericalError("constraint " + std::to_string(i) + " violated by " +
                                       std::to_string(resid));
    }
}

} // namespace

LpSolution SimplexSolver::solve(const LpProblem& problem) const {
    if (!problem.has_objective()) throw Error("solve called before set_objective");

    LpSolution out;
    detail::PresolveResult pre = detail::presolve(problem);
    if (pre.outcome == detail::PresolveResult::Outcome::Infeasible) {
        out.status = LpStatus::Infeasible;
        return out;
    }

    std::vector<double> core_values;
    if (pre.outcome == detail::PresolveResult::Outcome::Solved) {
        out.status = LpStatus::Optimal;
    } else {
        detail::CoreSolution sol = detail::simplex_solve(pre.core);
        out.status = sol.status;
        out.iterations = sol.iterations;
        if (sol.status != LpStatus::Optimal) return out;
        core_values = std::move(sol.values);
    }

    out.values = detail::postsolve(pre, core_values, problem.num_variables());
    double obj = 0.0;
    for (int j = 0; j < problem.num_variables(); ++j)
        obj += problem.objective_coef(j) * out.values[static_cast<std::size_t>(j)];
    out.objective_value = obj;
    verify(problem, out.values);
    return out;
}

} // namespace h2plan
