#pragma once

// Internal solver machinery shared between presolve and the simplex core.
// Not part of the public surface.

#include <cstddef>
#include <vector>

#include "h2plan/lp.hpp"

namespace h2plan::detail {

// Reduced problem in computational form: structural columns in CSC plus one
// implicit logical column per row, so that A x + s = b.
struct CoreLp {
    int n_struct = 0;
    int m = 0;

    // Bounds and costs over structural columns followed by logicals.
    std::vector<double> lo, up, cost;
    std::vector<double> rhs;

    // CSC of the structural columns only.
    std::vector<std::size_t> col_ptr;
    std::vector<int> col_row;
    std::vector<double> col_val;

    int num_cols() const { return n_struct + m; }
};

struct PresolveResult {
    enum class Outcome { Reduced, Infeasible, Solved };
    Outcome outcome = Outcome::Reduced;

    CoreLp core;
    double objective_const = 0.0;

    // Maps reduced structural column <-> original variable index.
    std::vector<int> core_to_orig;
    std::vector<int> orig_to_core;  // -1 when eliminated

    // Fully resolved substitutions for eliminated variables:
    // var = sub_c0[var] + sub_c1[var] * x[sub_other[var]]; other == -1 means
    // the variable folded to a constant.
    std::vector<char> eliminated;
    std::vector<int> sub_other;
    std::vector<double> sub_c0, sub_c1;
};

PresolveResult presolve(const LpProblem& problem);

// Expands a reduced solution (values over core structural columns) into the
// original variable space and applies the postsolve stack.
std::vector<double> postsolve(const PresolveResult& pre, const std::vector<double>& core_values,
                              int num_original_vars);

// Solves the reduced problem. Returns status plus values over core columns
// (structurals only) when optimal.
struct CoreSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> values;
    long iterations = 0;
};

CoreSolution simplex_solve(const CoreLp& core);

} // namespace h2plan::detail
