#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

namespace h2plan {

enum class Sense { LessEqual, Equal, GreaterEqual };

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpTerm {
    int var;
    double coef;
};

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Sparse linear program, minimization only. Rows are stored in insertion
/// order; variables are identified by the index add_variable returns.
class LpProblem {
public:
    /// Adds a column with bounds [lower, upper] (either may be infinite).
    /// Throws InvalidBounds when lower > upper.
    int add_variable(double lower, double upper);

    /// Appends the row `sum(terms) sense rhs` and returns its index.
    /// Throws UnknownVariable for out-of-range term indices.
    int add_constraint(const std::vector<LpTerm>& terms, Sense sense, double rhs);

    /// Replaces the (minimization) objective.
    void set_objective(const std::vector<LpTerm>& terms);

    int num_variables() const { return static_cast<int>(lower_.size()); }
    int num_constraints() const { return static_cast<int>(rhs_.size()); }
    bool has_objective() const { return objective_set_; }

    double lower(int var) const { return lower_[static_cast<std::size_t>(var)]; }
    double upper(int var) const { return upper_[static_cast<std::size_t>(var)]; }
    double objective_coef(int var) const { return objective_[static_cast<std::size_t>(var)]; }
    const std::vector<double>& objective() const { return objective_; }

    Sense row_sense(int row) const { return sense_[static_cast<std::size_t>(row)]; }
    double row_rhs(int row) const { return rhs_[static_cast<std::size_t>(row)]; }
    /// Terms of one row, in insertion order (duplicates add up).
    std::vector<LpTerm> row(int row) const;

    // Flat CSR access for the solver.
    const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
    const std::vector<int>& term_vars() const { return term_vars_; }
    const std::vector<double>& term_coefs() const { return term_coefs_; }

private:
    std::vector<double> lower_, upper_;
    std::vector<double> objective_;
    bool objective_set_ = false;

    std::vector<std::size_t> row_offsets_{0};
    std::vector<int> term_vars_;
    std::vector<double> term_coefs_;
    std::vector<Sense> sense_;
    std::vector<double> rhs_;
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> values;   // one entry per variable when Optimal
    double objective_value = 0.0;
    long iterations = 0;          // simplex pivots, diagnostics only
};

/// Deterministic bounded-variable simplex. Identical problems produce
/// bit-identical solutions on one platform; degenerate ties fall back to
/// Bland's rule (lowest index).
LpSolution solve(const LpProblem& problem);

/// Seam for plugging in an external solver behind the same contract.
class LpSolver {
public:
    virtual ~LpSolver() = default;
    virtual LpSolution solve(const LpProblem& problem) const = 0;
};

class SimplexSolver final : public LpSolver {
public:
    LpSolution solve(const LpProblem& problem) const override;
};

/// Writes the problem in LP text format (the subset documented in the
/// README: Minimize / Subject To / Bounds / End, variables named x0, x1, ...).
void dump_lp(const LpProblem& problem, std::ostream& os);

} // namespace h2plan
