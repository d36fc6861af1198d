#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <tuple>

#include "h2plan/errors.hpp"
#include "lp_internal.hpp"

namespace h2plan::detail {

namespace {

constexpr double kDropTol = 1e-12;   // coefficient dust after substitution
constexpr double kFixTol = 1e-11;    // bound width treated as fixed
constexpr double kBoundConflict = 1e-9;

struct Subst {
    // var = c0 + c1 * x[other]; other == -1 encodes a constant.
    int other = -1;
    double c0 = 0.0, c1 = 0.0;
};

struct Work {
    int n = 0;
    std::vector<double> lo, up;
    std::vector<char> eliminated;
    std::vector<Subst> sub;

    std::vector<std::vector<LpTerm>> rows;
    std::vector<Sense> sense;
    std::vector<double> rhs;
    std::vector<double> row_scale;
    std::vector<char> row_active;

    bool infeasible = false;

    // Follows substitution chains; result.other is always an active variable
    // or -1, and the entry is path-compressed.
    Subst resolve(int v) {
        if (!eliminated[static_cast<std::size_t>(v)]) return Subst{v, 0.0, 1.0};
        Subst& e = sub[static_cast<std::size_t>(v)];
        if (e.other >= 0 && eliminated[static_cast<std::size_t>(e.other)]) {
            Subst deeper = resolve(e.other);
            e.c0 += e.c1 * deeper.c0;
            e.c1 *= deeper.c1;
            e.other = deeper.other;
        }
        return e;
    }

    bool tighten_lower(int v, double b) {
        if (b > lo[static_cast<std::size_t>(v)]) lo[static_cast<std::size_t>(v)] = b;
        return check_bounds(v);
    }
    bool tighten_upper(int v, double b) {
        if (b < up[static_cast<std::size_t>(v)]) up[static_cast<std::size_t>(v)] = b;
        return check_bounds(v);
    }
    bool check_bounds(int v) {
        double l = lo[static_cast<std::size_t>(v)], u = up[static_cast<std::size_t>(v)];
        double tol = kBoundConflict * std::max({1.0, std::fabs(l), std::fabs(u)});
        if (l > u + tol) {
            infeasible = true;
            return false;
        }
        return true;
    }
};

std::uint64_t key_bits(double v) { return std::bit_cast<std::uint64_t>(v); }

} // namespace

PresolveResult presolve(const LpProblem& problem) {
    const int n = problem.num_variables();
    const int m0 = problem.num_constraints();

    Work w;
    w.n = n;
    w.lo.resize(static_cast<std::size_t>(n));
    w.up.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        w.lo[static_cast<std::size_t>(j)] = problem.lower(j);
        w.up[static_cast<std::size_t>(j)] = problem.upper(j);
    }
    w.eliminated.assign(static_cast<std::size_t>(n), 0);
    w.sub.assign(static_cast<std::size_t>(n), Subst{});

    w.rows.resize(static_cast<std::size_t>(m0));
    w.sense.resize(static_cast<std::size_t>(m0));
    w.rhs.resize(static_cast<std::size_t>(m0));
    w.row_scale.resize(static_cast<std::size_t>(m0));
    w.row_active.assign(static_cast<std::size_t>(m0), 1);
    const auto& offs = problem.row_offsets();
    const auto& tvar = problem.term_vars();
    const auto& tcoef = problem.term_coefs();
    for (int i = 0; i < m0; ++i) {
        auto& r = w.rows[static_cast<std::size_t>(i)];
        double amax = 0.0;
        for (std::size_t k = offs[static_cast<std::size_t>(i)]; k < offs[static_cast<std::size_t>(i) + 1]; ++k) {
            r.push_back({tvar[k], tcoef[k]});
            amax = std::max(amax, std::fabs(tcoef[k]));
        }
        w.sense[static_cast<std::size_t>(i)] = problem.row_sense(i);
        w.rhs[static_cast<std::size_t>(i)] = problem.row_rhs(i);
        w.row_scale[static_cast<std::size_t>(i)] =
            std::max({1.0, std::fabs(problem.row_rhs(i)), amax});
    }

    // Scratch for row rewriting.
    std::vector<double> acc(static_cast<std::size_t>(n), 0.0);
    std::vector<int> touched;

    auto rewrite_row = [&](int i) {
        auto& terms = w.rows[static_cast<std::size_t>(i)];
        touched.clear();
        for (const LpTerm& t : terms) {
            Subst s = w.resolve(t.var);
            w.rhs[static_cast<std::size_t>(i)] -= t.coef * s.c0;
            if (s.other >= 0 && s.c1 != 0.0) {
                if (acc[static_cast<std::size_t>(s.other)] == 0.0) touched.push_back(s.other);
                acc[static_cast<std::size_t>(s.other)] += t.coef * s.c1;
            }
        }
        std::sort(touched.begin(), touched.end());
        terms.clear();
        for (int v : touched) {
            double c = acc[static_cast<std::size_t>(v)];
            acc[static_cast<std::size_t>(v)] = 0.0;
            if (std::fabs(c) > kDropTol) terms.push_back({v, c});
        }
    };

    bool changed = true;
    int pass = 0;
    while (changed && !w.infeasible && ++pass <= 64) {
        changed = false;
        // Key: (v1, v2, ratio bits, normalized sense) for duplicate 2-term rows.
        std::map<std::tuple<int, int, std::uint64_t, int>, int> two_term;

        for (int i = 0; i < m0 && !w.infeasible; ++i) {
            if (!w.row_active[static_cast<std::size_t>(i)]) continue;
            rewrite_row(i);
            auto& terms = w.rows[static_cast<std::size_t>(i)];
            const Sense sense = w.sense[static_cast<std::size_t>(i)];
            const double rhs = w.rhs[static_cast<std::size_t>(i)];
            const double tol = 1e-6 * w.row_scale[static_cast<std::size_t>(i)];

            if (terms.empty()) {
                bool ok = (sense == Sense::Equal) ? std::fabs(rhs) <= tol
                          : (sense == Sense::LessEqual) ? rhs >= -tol
                                                        : rhs <= tol;
                if (!ok) w.infeasible = true;
                w.row_active[static_cast<std::size_t>(i)] = 0;
                changed = true;
                continue;
            }

            if (terms.size() == 1) {
                const int v = terms[0].var;
                const double a = terms[0].coef;
                const double b = rhs / a;
                if (sense == Sense::Equal) {
                    w.tighten_lower(v, b);
                    w.tighten_upper(v, b);
                } else if ((sense == Sense::LessEqual) == (a > 0.0)) {
                    w.tighten_upper(v, b);
                } else {
                    w.tighten_lower(v, b);
                }
                w.row_active[static_cast<std::size_t>(i)] = 0;
                changed = true;
                continue;
            }

            // Inequality rows already implied by the variable bounds vanish;
            // this removes every ramp row whose rate is 100 %/h.
            if (sense != Sense::Equal) {
                double act_min = 0.0, act_max = 0.0;
                for (const LpTerm& t : terms) {
                    const double l = w.lo[static_cast<std::size_t>(t.var)];
                    const double u = w.up[static_cast<std::size_t>(t.var)];
                    if (t.coef > 0.0) {
                        act_max += t.coef * u;
                        act_min += t.coef * l;
                    } else {
                        act_max += t.coef * l;
                        act_min += t.coef * u;
                    }
                }
                const double slack_tol = 1e-9 * w.row_scale[static_cast<std::size_t>(i)];
                if (sense == Sense::LessEqual) {
                    if (act_min > rhs + tol) {
                        w.infeasible = true;
                        continue;
                    }
                    if (act_max <= rhs + slack_tol) {
                        w.row_active[static_cast<std::size_t>(i)] = 0;
                        changed = true;
                        continue;
                    }
                } else {
                    if (act_max < rhs - tol) {
                        w.infeasible = true;
                        continue;
                    }
                    if (act_min >= rhs - slack_tol) {
                        w.row_active[static_cast<std::size_t>(i)] = 0;
                        changed = true;
                        continue;
                    }
                }
            }

            if (terms.size() == 2) {
                // Normalize by the first coefficient so proportional duplicates
                // (the warm/cold ramp twins) collapse to the tighter row.
                const double c1 = terms[0].coef, c2 = terms[1].coef;
                const double ratio = c2 / c1;
                Sense ns = sense;
                if (c1 < 0.0 && sense != Sense::Equal)
                    ns = (sense == Sense::LessEqual) ? Sense::GreaterEqual : Sense::LessEqual;
                if (ns != Sense::Equal) {
                    auto key = std::make_tuple(terms[0].var, terms[1].var, key_bits(ratio),
                                               static_cast<int>(ns));
                    const double nrhs = rhs / c1;
                    auto it = two_term.find(key);
                    if (it != two_term.end()) {
                        const int other = it->second;
                        double orhs = w.rhs[static_cast<std::size_t>(other)] /
                                      w.rows[static_cast<std::size_t>(other)][0].coef;
                        bool this_tighter = (ns == Sense::LessEqual) ? nrhs < orhs : nrhs > orhs;
                        if (this_tighter) {
                            w.row_active[static_cast<std::size_t>(other)] = 0;
                            it->second = i;
                        } else {
                            w.row_active[static_cast<std::size_t>(i)] = 0;
                        }
                        changed = true;
                        continue;
                    }
                    two_term.emplace(key, i);
                } else {
                    // Doubleton equality: substitute one variable away.
                    int keep, drop;
                    double a_drop, a_keep;
                    if (std::fabs(c1) > std::fabs(c2) ||
                        (std::fabs(c1) == std::fabs(c2) && terms[0].var < terms[1].var)) {
                        drop = terms[0].var; a_drop = c1;
                        keep = terms[1].var; a_keep = c2;
                    } else {
                        drop = terms[1].var; a_drop = c2;
                        keep = terms[0].var; a_keep = c1;
                    }
                    // drop = (rhs - a_keep * keep) / a_drop
                    const double s0 = rhs / a_drop;
                    const double s1 = -a_keep / a_drop;
                    // Transfer drop's bounds onto keep.
                    const double dl = w.lo[static_cast<std::size_t>(drop)];
                    const double du = w.up[static_cast<std::size_t>(drop)];
                    if (s1 > 0.0) {
                        if (dl != -kInfinity) w.tighten_lower(keep, (dl - s0) / s1);
                        if (du != kInfinity) w.tighten_upper(keep, (du - s0) / s1);
                    } else {
                        if (dl != -kInfinity) w.tighten_upper(keep, (dl - s0) / s1);
                        if (du != kInfinity) w.tighten_lower(keep, (du - s0) / s1);
                    }
                    w.eliminated[static_cast<std::size_t>(drop)] = 1;
                    w.sub[static_cast<std::size_t>(drop)] = Subst{keep, s0, s1};
                    w.row_active[static_cast<std::size_t>(i)] = 0;
                    changed = true;
                    continue;
                }
            }
        }

        if (w.infeasible) break;

        // Fold variables whose bounds collapsed into constants.
        for (int v = 0; v < n; ++v) {
            if (w.eliminated[static_cast<std::size_t>(v)]) continue;
            const double l = w.lo[static_cast<std::size_t>(v)], u = w.up[static_cast<std::size_t>(v)];
            if (l != -kInfinity && u != kInfinity && u - l <= kFixTol * std::max(1.0, std::fabs(l))) {
                w.eliminated[static_cast<std::size_t>(v)] = 1;
                w.sub[static_cast<std::size_t>(v)] = Subst{-1, 0.5 * (l + u), 0.0};
                changed = true;
            }
        }
    }

    PresolveResult out;
    if (w.infeasible) {
        out.outcome = PresolveResult::Outcome::Infeasible;
        return out;
    }

    // The loop normally exits after a clean pass; if the pass cap stopped it,
    // rows may still reference eliminated variables.
    if (changed)
        for (int i = 0; i < m0; ++i)
            if (w.row_active[static_cast<std::size_t>(i)]) rewrite_row(i);

    // Reduced objective over surviving variables.
    std::vector<double> obj_red(static_cast<std::size_t>(n), 0.0);
    double obj_const = 0.0;
    for (int v = 0; v < n; ++v) {
        const double c = problem.objective_coef(v);
        if (c == 0.0) continue;
        Subst s = w.resolve(v);
        obj_const += c * s.c0;
        if (s.other >= 0) obj_red[static_cast<std::size_t>(s.other)] += c * s.c1;
    }

    // Column occupancy; columns in no row move to their cost-preferred finite
    // bound. Cost-improving infinite directions stay in the core so that the
    // simplex keeps the Infeasible-before-Unbounded precedence.
    std::vector<int> occupancy(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < m0; ++i) {
        if (!w.row_active[static_cast<std::size_t>(i)]) continue;
        for (const LpTerm& t : w.rows[static_cast<std::size_t>(i)]) ++occupancy[static_cast<std::size_t>(t.var)];
    }
    for (int v = 0; v < n; ++v) {
        if (w.eliminated[static_cast<std::size_t>(v)] || occupancy[static_cast<std::size_t>(v)] > 0) continue;
        const double c = obj_red[static_cast<std::size_t>(v)];
        const double l = w.lo[static_cast<std::size_t>(v)], u = w.up[static_cast<std::size_t>(v)];
        double value;
        if (c > kDropTol) {
            if (l == -kInfinity) continue;  // unbounded direction, leave to simplex
            value = l;
        } else if (c < -kDropTol) {
            if (u == kInfinity) continue;
            value = u;
        } else {
            value = (l <= 0.0 && u >= 0.0) ? 0.0 : (l != -kInfinity ? l : u);
            if (l == -kInfinity && u == kInfinity) value = 0.0;
        }
        w.eliminated[static_cast<std::size_t>(v)] = 1;
        w.sub[static_cast<std::size_t>(v)] = Subst{-1, value, 0.0};
        obj_const += c * value;
        obj_red[static_cast<std::size_t>(v)] = 0.0;
    }

    // Assemble the core problem.
    out.orig_to_core.assign(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        if (w.eliminated[static_cast<std::size_t>(v)]) continue;
        out.orig_to_core[static_cast<std::size_t>(v)] = static_cast<int>(out.core_to_orig.size());
        out.core_to_orig.push_back(v);
    }

    CoreLp& core = out.core;
    core.n_struct = static_cast<int>(out.core_to_orig.size());
    std::vector<int> live_rows;
    for (int i = 0; i < m0; ++i)
        if (w.row_active[static_cast<std::size_t>(i)] && !w.rows[static_cast<std::size_t>(i)].empty())
            live_rows.push_back(i);
    core.m = static_cast<int>(live_rows.size());

    core.lo.resize(static_cast<std::size_t>(core.num_cols()));
    core.up.resize(static_cast<std::size_t>(core.num_cols()));
    core.cost.assign(static_cast<std::size_t>(core.num_cols()), 0.0);
    for (int j = 0; j < core.n_struct; ++j) {
        const int v = out.core_to_orig[static_cast<std::size_t>(j)];
        core.lo[static_cast<std::size_t>(j)] = w.lo[static_cast<std::size_t>(v)];
        core.up[static_cast<std::size_t>(j)] = w.up[static_cast<std::size_t>(v)];
        core.cost[static_cast<std::size_t>(j)] = obj_red[static_cast<std::size_t>(v)];
    }

    // Build CSC from the live rows.
    std::vector<std::size_t> col_count(static_cast<std::size_t>(core.n_struct), 0);
    for (int i : live_rows)
        for (const LpTerm& t : w.rows[static_cast<std::size_t>(i)])
            ++col_count[static_cast<std::size_t>(out.orig_to_core[static_cast<std::size_t>(t.var)])];
    core.col_ptr.assign(static_cast<std::size_t>(core.n_struct) + 1, 0);
    for (int j = 0; j < core.n_struct; ++j)
        core.col_ptr[static_cast<std::size_t>(j) + 1] =
            core.col_ptr[static_cast<std::size_t>(j)] + col_count[static_cast<std::size_t>(j)];
    core.col_row.resize(core.col_ptr.back());
    core.col_val.resize(core.col_ptr.back());
    std::vector<std::size_t> fill(core.col_ptr.begin(), core.col_ptr.end() - 1);
    core.rhs.resize(static_cast<std::size_t>(core.m));
    for (int r = 0; r < core.m; ++r) {
        const int i = live_rows[static_cast<std::size_t>(r)];
        core.rhs[static_cast<std::size_t>(r)] = w.rhs[static_cast<std::size_t>(i)];
        for (const LpTerm& t : w.rows[static_cast<std::size_t>(i)]) {
            const int j = out.orig_to_core[static_cast<std::size_t>(t.var)];
            core.col_row[fill[static_cast<std::size_t>(j)]] = r;
            core.col_val[fill[static_cast<std::size_t>(j)]] = t.coef;
            ++fill[static_cast<std::size_t>(j)];
        }
        // Logical column bounds by sense.
        const int lj = core.n_struct + r;
        switch (w.sense[static_cast<std::size_t>(i)]) {
            case Sense::LessEqual:
                core.lo[static_cast<std::size_t>(lj)] = 0.0;
                core.up[static_cast<std::size_t>(lj)] = kInfinity;
                break;
            case Sense::GreaterEqual:
                core.lo[static_cast<std::size_t>(lj)] = -kInfinity;
                core.up[static_cast<std::size_t>(lj)] = 0.0;
                break;
            case Sense::Equal:
                core.lo[static_cast<std::size_t>(lj)] = 0.0;
                core.up[static_cast<std::size_t>(lj)] = 0.0;
                break;
        }
    }

    out.objective_const = obj_const;
    out.eliminated.assign(w.eliminated.begin(), w.eliminated.end());
    out.sub_other.resize(static_cast<std::size_t>(n));
    out.sub_c0.resize(static_cast<std::size_t>(n));
    out.sub_c1.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        Subst s = w.eliminated[static_cast<std::size_t>(v)] ? w.resolve(v) : Subst{};
        out.sub_other[static_cast<std::size_t>(v)] = s.other;
        out.sub_c0[static_cast<std::size_t>(v)] = s.c0;
        out.sub_c1[static_cast<std::size_t>(v)] = s.c1;
    }

    out.outcome = (core.m == 0 && core.n_struct == 0) ? PresolveResult::Outcome::Solved
                                                      : PresolveResult::Outcome::Reduced;
    return out;
}

std::vector<double> postsolve(const PresolveResult& pre, const std::vector<double>& core_values,
                              int num_original_vars) {
    std::vector<double> x(static_cast<std::size_t>(num_original_vars), 0.0);
    for (int v = 0; v < num_original_vars; ++v) {
        if (!pre.eliminated[static_cast<std::size_t>(v)]) {
            x[static_cast<std::size_t>(v)] =
                core_values[static_cast<std::size_t>(pre.orig_to_core[static_cast<std::size_t>(v)])];
        }
    }
    for (int v = 0; v < num_original_vars; ++v) {
        if (!pre.eliminated[static_cast<std::size_t>(v)]) continue;
        const int o = pre.sub_other[static_cast<std::size_t>(v)];
        double base = 0.0;
        if (o >= 0) {
            // The resolved chain always ends at a surviving variable.
            base = x[static_cast<std::size_t>(o)];
        }
        x[static_cast<std::size_t>(v)] =
            pre.sub_c0[static_cast<std::size_t>(v)] + pre.sub_c1[static_cast<std::size_t>(v)] * base;
    }
    return x;
}

} // namespace h2plan::detail
