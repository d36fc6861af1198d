#include "h2plan/lp.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "h2plan/errors.hpp"

namespace h2plan {

int LpProblem::add_variable(double lower, double upper) {
    if (std::isnan(lower) || std::isnan(upper) || lower > upper)
        throw InvalidBounds("variable bounds [" + std::to_string(lower) + ", " + std::to_string(upper) + "]");
    lower_.push_back(lower);
    upper_.push_back(upper);
    objective_.push_back(0.0);
    return static_cast<int>(lower_.size()) - 1;
}

int LpProblem::add_constraint(const std::vector<LpTerm>& terms, Sense sense, double rhs) {
    for (const LpTerm& t : terms) {
        if (t.var < 0 || t.var >= num_variables())
            throw UnknownVariable("constraint references variable " + std::to_string(t.var));
        term_vars_.push_back(t.var);
        term_coefs_.push_back(t.coef);
    }
    row_offsets_.push_back(term_vars_.size());
    sense_.push_back(sense);
    rhs_.push_back(rhs);
    return static_cast<int>(rhs_.size()) - 1;
}

void LpProblem::set_objective(const std::vector<LpTerm>& terms) {
    for (const LpTerm& t : terms) {
        if (t.var < 0 || t.var >= num_variables())
            throw UnknownVariable("objective references variable " + std::to_string(t.var));
    }
    std::fill(objective_.begin(), objective_.end(), 0.0);
    for (const LpTerm& t : terms) objective_[static_cast<std::size_t>(t.var)] += t.coef;
    objective_set_ = true;
}

std::vector<LpTerm> LpProblem::row(int r) const {
    std::vector<LpTerm> out;
    for (std::size_t k = row_offsets_[static_cast<std::size_t>(r)];
         k < row_offsets_[static_cast<std::size_t>(r) + 1]; ++k)
        out.push_back({term_vars_[k], term_coefs_[k]});
    return out;
}

LpSolution solve(const LpProblem& problem) { return SimplexSolver{}.solve(problem); }

namespace {

void write_term(std::ostream& os, double coef, int var, bool first) {
    if (coef >= 0.0)
        os << (first ? "" : " + ");
    else
        os << (first ? "- " : " - ");
    os << std::abs(coef) << " x" << var;
}

} // namespace

void dump_lp(const LpProblem& p, std::ostream& os) {
    os << "Minimize\n obj:";
    bool first = true;
    for (int j = 0; j < p.num_variables(); ++j) {
        double c = p.objective_coef(j);
        if (c == 0.0) continue;
        os << ' ';
        write_term(os, c, j, first);
        first = false;
    }
    if (first) os << " 0 x0";
    os << "\nSubject To\n";
    for (int i = 0; i < p.num_constraints(); ++i) {
        os << " c" << i << ":";
        bool f = true;
        for (const LpTerm& t : p.row(i)) {
            os << ' ';
            write_term(os, t.coef, t.var, f);
            f = false;
        }
        if (f) os << " 0 x0";
        switch (p.row_sense(i)) {
            case Sense::LessEqual: os << " <= "; break;
            case Sense::Equal: os << " = "; break;
            case Sense::GreaterEqual: os << " >= "; break;
        }
        os << p.row_rhs(i) << "\n";
    }
    os << "Bounds\n";
    for (int j = 0; j < p.num_variables(); ++j) {
        double lo = p.lower(j), up = p.upper(j);
        if (lo == -kInfinity && up == kInfinity) {
            os << " x" << j << " free\n";
        } else if (lo == -kInfinity) {
            os << " -inf <= x" << j << " <= " << up << "\n";
        } else if (up == kInfinity) {
            os << " " << lo << " <= x" << j << " <= +inf\n";
        } else {
            os << " " << lo << " <= x" << j << " <= " << up << "\n";
        }
    }
    os << "End\n";
}

} // namespace h2plan
