#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "h2plan/errors.hpp"
#include "lp_internal.hpp"

namespace h2plan::detail {

namespace {

constexpr double kFeasTol = 1e-9;    // primal bound tolerance during pivoting
constexpr double kDualTol = 1e-9;    // reduced-cost threshold
constexpr double kPivotTol = 1e-9;   // smallest acceptable basis pivot
constexpr double kZeroTol = 1e-13;

// Applies f to every (row, value) entry of core column j (logical columns are
// implicit unit vectors).
template <class F>
void for_col(const CoreLp& c, int j, F&& f) {
    if (j < c.n_struct) {
        for (std::size_t k = c.col_ptr[static_cast<std::size_t>(j)];
             k < c.col_ptr[static_cast<std::size_t>(j) + 1]; ++k)
            f(c.col_row[k], c.col_val[k]);
    } else {
        f(j - c.n_struct, 1.0);
    }
}

// ---------------------------------------------------------------------------
// Basis factorization: sparse LU via Markowitz-flavoured Gaussian elimination
// (singleton peeling falls out of the min-count pivot rule), plus product-form
// eta updates between refactorizations.
//
// Representation: row-major elimination ops.  M B = U_perm, where M is the
// recorded sequence of "row_i -= f * row_ip" operations and U_perm holds the
// pivot rows.  FTRAN replays M forward then back-substitutes U; BTRAN runs the
// transposed recurrences.
// ---------------------------------------------------------------------------
class BasisFactor {
public:
    // Returns false when the basis is singular; `unpivoted_rows` then lists
    // rows that need a logical column patched in.
    bool factorize(const CoreLp& core, const std::vector<int>& basic,
                   std::vector<int>& unpivoted_rows) {
        m_ = core.m;
        lops_.clear();
        prow_.clear();
        pcol_.clear();
        urows_.clear();
        upiv_.clear();
        etas_.clear();
        eta_nnz_ = 0;
        unpivoted_rows.clear();
        if (m_ == 0) return true;

        // Working rows of B; "colpos" refers to basis position 0..m-1.
        std::vector<std::vector<std::pair<int, double>>> rows(static_cast<std::size_t>(m_));
        for (int p = 0; p < m_; ++p)
            for_col(core, basic[static_cast<std::size_t>(p)],
                    [&](int i, double v) { rows[static_cast<std::size_t>(i)].push_back({p, v}); });
        for (auto& r : rows) std::sort(r.begin(), r.end());

        std::vector<std::vector<int>> col_rows(static_cast<std::size_t>(m_));
        std::vector<int> col_count(static_cast<std::size_t>(m_), 0);
        std::vector<int> row_count(static_cast<std::size_t>(m_), 0);
        std::vector<char> row_done(static_cast<std::size_t>(m_), 0);
        std::vector<char> col_done(static_cast<std::size_t>(m_), 0);
        for (int i = 0; i < m_; ++i) {
            row_count[static_cast<std::size_t>(i)] = static_cast<int>(rows[static_cast<std::size_t>(i)].size());
            for (auto& e : rows[static_cast<std::size_t>(i)]) {
                col_rows[static_cast<std::size_t>(e.first)].push_back(i);
                ++col_count[static_cast<std::size_t>(e.first)];
            }
        }

        // Bucket queue keyed by active count; entries are validated lazily.
        std::vector<std::vector<int>> buckets(static_cast<std::size_t>(m_) + 1);
        int curr_min = m_;
        auto queue_push = [&](int col, int cnt) {
            if (cnt < 0) cnt = 0;
            if (cnt > m_) cnt = m_;
            buckets[static_cast<std::size_t>(cnt)].push_back(col);
            if (cnt < curr_min) curr_min = cnt;
        };
        for (int p = 0; p < m_; ++p) queue_push(p, col_count[static_cast<std::size_t>(p)]);

        auto row_find = [&](int i, int col) -> const std::pair<int, double>* {
            const auto& r = rows[static_cast<std::size_t>(i)];
            auto it = std::lower_bound(
                r.begin(), r.end(), col,
                [](const std::pair<int, double>& e, int c) { return e.first < c; });
            if (it != r.end() && it->first == col) return &*it;
            return nullptr;
        };

        std::vector<std::pair<int, double>> merged;
        while (static_cast<int>(prow_.size()) < m_) {
            int jp = -1;
            while (curr_min <= m_) {
                auto& b = buckets[static_cast<std::size_t>(curr_min)];
                if (b.empty()) {
                    ++curr_min;
                    continue;
                }
                const int col = b.back();
                b.pop_back();
                if (col_done[static_cast<std::size_t>(col)] ||
                    curr_min != col_count[static_cast<std::size_t>(col)])
                    continue;
                jp = col;
                break;
            }
            if (jp == -1) break;
            if (col_count[static_cast<std::size_t>(jp)] == 0) {
                col_done[static_cast<std::size_t>(jp)] = 1;
                continue;  // structurally singular column
            }

            // Validate candidate rows and find the column's magnitude scale.
            double amax = 0.0;
            auto& crs = col_rows[static_cast<std::size_t>(jp)];
            std::size_t keep = 0;
            for (std::size_t idx = 0; idx < crs.size(); ++idx) {
                const int i = crs[idx];
                if (row_done[static_cast<std::size_t>(i)]) continue;
                const auto* e = row_find(i, jp);
                if (!e) continue;
                bool dup = false;
                for (std::size_t q = 0; q < keep; ++q)
                    if (crs[q] == i) { dup = true; break; }
                if (dup) continue;
                crs[keep++] = i;
                amax = std::max(amax, std::fabs(e->second));
            }
            crs.resize(keep);
            col_count[static_cast<std::size_t>(jp)] = static_cast<int>(keep);
            if (amax < kPivotTol) {
                col_done[static_cast<std::size_t>(jp)] = 1;
                continue;  // numerically singular column
            }

            // Pivot row: least filled among entries within 1% of the largest.
            int ip = -1;
            int best_count = 0;
            for (int i : crs) {
                const auto* e = row_find(i, jp);
                if (std::fabs(e->second) < 0.01 * amax) continue;
                if (ip == -1 || row_count[static_cast<std::size_t>(i)] < best_count ||
                    (row_count[static_cast<std::size_t>(i)] == best_count && i < ip)) {
                    ip = i;
                    best_count = row_count[static_cast<std::size_t>(i)];
                }
            }

            const double piv = row_find(ip, jp)->second;
            const std::size_t k_idx = prow_.size();
            prow_.push_back(ip);
            pcol_.push_back(jp);
            upiv_.push_back(piv);
            urows_.emplace_back();
            for (auto& e : rows[static_cast<std::size_t>(ip)])
                if (e.first != jp && !col_done[static_cast<std::size_t>(e.first)])
                    urows_.back().push_back(e);
            lops_.emplace_back();

            for (int i : crs) {
                if (i == ip) continue;
                const auto* e = row_find(i, jp);
                if (!e) continue;
                const double f = e->second / piv;
                lops_[k_idx].push_back({i, f});

                merged.clear();
                const auto& ri = rows[static_cast<std::size_t>(i)];
                const auto& rp = rows[static_cast<std::size_t>(ip)];
                std::size_t a = 0, b = 0;
                while (a < ri.size() || b < rp.size()) {
                    if (b == rp.size() || (a < ri.size() && ri[a].first < rp[b].first)) {
                        if (ri[a].first != jp) merged.push_back(ri[a]);
                        ++a;
                    } else if (a == ri.size() || rp[b].first < ri[a].first) {
                        const int col = rp[b].first;
                        const double v = -f * rp[b].second;
                        ++b;
                        if (col == jp || col_done[static_cast<std::size_t>(col)]) continue;
                        if (std::fabs(v) <= kZeroTol) continue;
                        merged.push_back({col, v});
                        ++col_count[static_cast<std::size_t>(col)];
                        col_rows[static_cast<std::size_t>(col)].push_back(i);
                        queue_push(col, col_count[static_cast<std::size_t>(col)]);
                    } else {
                        const int col = ri[a].first;
                        const double ov = ri[a].second;
                        const double sv = f * rp[b].second;
                        const double v = ov - sv;
                        ++a;
                        ++b;
                        if (col == jp) continue;
                        if (std::fabs(v) <= 1e-12 * (std::fabs(ov) + std::fabs(sv))) {
                            if (!col_done[static_cast<std::size_t>(col)]) {
                                --col_count[static_cast<std::size_t>(col)];
                                queue_push(col, col_count[static_cast<std::size_t>(col)]);
                            }
                            continue;
                        }
                        merged.push_back({col, v});
                    }
                }
                rows[static_cast<std::size_t>(i)] = merged;
                row_count[static_cast<std::size_t>(i)] = static_cast<int>(merged.size());
            }

            row_done[static_cast<std::size_t>(ip)] = 1;
            col_done[static_cast<std::size_t>(jp)] = 1;
            for (auto& e : rows[static_cast<std::size_t>(ip)]) {
                if (col_done[static_cast<std::size_t>(e.first)]) continue;
                --col_count[static_cast<std::size_t>(e.first)];
                queue_push(e.first, col_count[static_cast<std::size_t>(e.first)]);
            }
        }

        if (static_cast<int>(prow_.size()) < m_) {
            for (int i = 0; i < m_; ++i)
                if (!row_done[static_cast<std::size_t>(i)]) unpivoted_rows.push_back(i);
            return false;
        }
        return true;
    }

    // x := B^{-1} x; input in row space, output indexed by basis position.
    void ftran(std::vector<double>& x) const {
        for (std::size_t k = 0; k < prow_.size(); ++k) {
            const double xp = x[static_cast<std::size_t>(prow_[k])];
            if (xp != 0.0)
                for (const Lop& op : lops_[k]) x[static_cast<std::size_t>(op.row)] -= op.f * xp;
        }
        scratch_.assign(static_cast<std::size_t>(m_), 0.0);
        for (std::size_t kk = prow_.size(); kk-- > 0;) {
            double s = x[static_cast<std::size_t>(prow_[kk])];
            for (const auto& e : urows_[kk]) s -= e.second * scratch_[static_cast<std::size_t>(e.first)];
            scratch_[static_cast<std::size_t>(pcol_[kk])] = s / upiv_[kk];
        }
        x.swap(scratch_);
        for (const Eta& e : etas_) {
            const double t = x[static_cast<std::size_t>(e.pos)] / e.piv;
            x[static_cast<std::size_t>(e.pos)] = t;
            if (t != 0.0)
                for (const auto& term : e.terms)
                    x[static_cast<std::size_t>(term.first)] -= term.second * t;
        }
    }

    // y := B^{-T} y; input indexed by basis position, output in row space.
    void btran(std::vector<double>& y) const {
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            double s = y[static_cast<std::size_t>(it->pos)];
            for (const auto& term : it->terms)
                s -= term.second * y[static_cast<std::size_t>(term.first)];
            y[static_cast<std::size_t>(it->pos)] = s / it->piv;
        }
        scratch_.assign(static_cast<std::size_t>(m_), 0.0);
        for (std::size_t k = 0; k < prow_.size(); ++k) {
            const double wk = y[static_cast<std::size_t>(pcol_[k])] / upiv_[k];
            scratch_[static_cast<std::size_t>(prow_[k])] = wk;
            if (wk != 0.0)
                for (const auto& e : urows_[k]) y[static_cast<std::size_t>(e.first)] -= e.second * wk;
        }
        y.swap(scratch_);
        for (std::size_t kk = prow_.size(); kk-- > 0;) {
            double acc = y[static_cast<std::size_t>(prow_[kk])];
            for (const Lop& op : lops_[kk]) acc -= op.f * y[static_cast<std::size_t>(op.row)];
            y[static_cast<std::size_t>(prow_[kk])] = acc;
        }
    }

    bool update(int pos, const std::vector<double>& w_dense, const std::vector<int>& w_nz) {
        const double piv = w_dense[static_cast<std::size_t>(pos)];
        if (std::fabs(piv) < kPivotTol) return false;
        Eta e;
        e.pos = pos;
        e.piv = piv;
        for (int i : w_nz) {
            if (i == pos) continue;
            const double v = w_dense[static_cast<std::size_t>(i)];
            if (std::fabs(v) > kZeroTol) e.terms.push_back({i, v});
        }
        eta_nnz_ += e.terms.size() + 1;
        etas_.push_back(std::move(e));
        return true;
    }

    int eta_count() const { return static_cast<int>(etas_.size()); }
    std::size_t eta_nnz() const { return eta_nnz_; }

private:
    struct Lop {
        int row;
        double f;
    };
    struct Eta {
        int pos;
        double piv;
        std::vector<std::pair<int, double>> terms;
    };

    int m_ = 0;
    std::vector<std::vector<Lop>> lops_;
    std::vector<int> prow_, pcol_;
    std::vector<std::vector<std::pair<int, double>>> urows_;
    std::vector<double> upiv_;
    std::vector<Eta> etas_;
    std::size_t eta_nnz_ = 0;
    mutable std::vector<double> scratch_;
};

// ---------------------------------------------------------------------------
// Bounded-variable primal simplex, two phases.  Phase 1 minimizes the sum of
// bound violations of the basic variables (composite objective); phase 2 the
// true cost.  Entering rule is Dantzig with lowest-index ties, falling back to
// Bland's rule while the objective stalls, which keeps the method finite and
// the pivot sequence deterministic.
// ---------------------------------------------------------------------------
enum class VStat : char { AtLower, AtUpper, Basic, FreeZero };

class Simplex {
public:
    explicit Simplex(const CoreLp& core) : c_(core) {}

    CoreSolution run() {
        const int m = c_.m;
        const int n = c_.num_cols();
        vstat_.assign(static_cast<std::size_t>(n), VStat::AtLower);
        x_.assign(static_cast<std::size_t>(n), 0.0);
        basic_.resize(static_cast<std::size_t>(m));

        for (int j = 0; j < n; ++j) {
            if (c_.lo[static_cast<std::size_t>(j)] != -kInfinity) {
                vstat_[static_cast<std::size_t>(j)] = VStat::AtLower;
                x_[static_cast<std::size_t>(j)] = c_.lo[static_cast<std::size_t>(j)];
            } else if (c_.up[static_cast<std::size_t>(j)] != kInfinity) {
                vstat_[static_cast<std::size_t>(j)] = VStat::AtUpper;
                x_[static_cast<std::size_t>(j)] = c_.up[static_cast<std::size_t>(j)];
            } else {
                vstat_[static_cast<std::size_t>(j)] = VStat::FreeZero;
                x_[static_cast<std::size_t>(j)] = 0.0;
            }
        }
        crash_basis();
        if (!refactorize()) return fail_solution();
        compute_basic_values();

        const long iter_limit = 50000 + 50L * (m + 1);
        int phase = current_max_violation() > kFeasTol ? 1 : 2;
        long stall = 0;
        bool bland = false;
        double last_obj = phase_objective(phase);
        double obj_track = last_obj;
        int cursor = 0;  // partial-pricing position, advances deterministically

        std::vector<double> y, w;
        std::vector<int> w_nz;

        while (true) {
            if (++iterations_ > iter_limit)
                throw SolverNumericalError("simplex iteration limit exceeded");

            // Pricing.
            y.assign(static_cast<std::size_t>(m), 0.0);
            for (int p = 0; p < m; ++p)
                y[static_cast<std::size_t>(p)] = work_cost(phase, basic_[static_cast<std::size_t>(p)], p);
            factor_.btran(y);

            auto reduced_cost = [&](int j) {
                double d = (phase == 2 ? c_.cost[static_cast<std::size_t>(j)] : 0.0);
                if (j < c_.n_struct) {
                    for (std::size_t k = c_.col_ptr[static_cast<std::size_t>(j)];
                         k < c_.col_ptr[static_cast<std::size_t>(j) + 1]; ++k)
                        d -= c_.col_val[k] * y[static_cast<std::size_t>(c_.col_row[k])];
                } else {
                    d -= y[static_cast<std::size_t>(j - c_.n_struct)];
                }
                return d;
            };
            auto eligibility = [&](int j, double& score) -> int {
                const VStat vs = vstat_[static_cast<std::size_t>(j)];
                if (vs == VStat::Basic) return 0;
                if (c_.up[static_cast<std::size_t>(j)] - c_.lo[static_cast<std::size_t>(j)] <= 0.0)
                    return 0;  // fixed column can never move
                const double d = reduced_cost(j);
                int cand = 0;
                score = 0.0;
                if ((vs == VStat::AtLower || vs == VStat::FreeZero) && d < -kDualTol) {
                    cand = +1;
                    score = -d;
                }
                if ((vs == VStat::AtUpper || vs == VStat::FreeZero) && d > kDualTol && d > score) {
                    cand = -1;
                    score = d;
                }
                return cand;
            };

            int q = -1;
            int dir = 0;
            double best = kDualTol;
            double d_entering = 0.0;
            if (bland) {
                // Lowest eligible index; finite by Bland's theorem.
                for (int j = 0; j < n; ++j) {
                    double score;
                    const int cand = eligibility(j, score);
                    if (cand != 0) {
                        q = j;
                        dir = cand;
                        d_entering = dir > 0 ? -score : score;
                        break;
                    }
                }
            } else {
                // Partial pricing: rotate through blocks of columns and take
                // the best candidate of the first block that has one.
                constexpr int kBlock = 1024;
                int scanned = 0;
                while (scanned < n) {
                    const int stop = std::min(n - scanned, kBlock);
                    for (int step = 0; step < stop; ++step) {
                        const int j = cursor;
                        cursor = cursor + 1 == n ? 0 : cursor + 1;
                        double score;
                        const int cand = eligibility(j, score);
                        if (cand != 0 && score > best) {
                            best = score;
                            q = j;
                            dir = cand;
                        }
                    }
                    scanned += stop;
                    if (q != -1) break;
                }
                if (q != -1) d_entering = dir > 0 ? -best : best;
            }

            if (q == -1) {
                if (phase == 1) {
                    if (current_max_violation() > 1e-7) {
                        status_ = LpStatus::Infeasible;
                        return finish();
                    }
                    phase = 2;
                    bland = false;
                    stall = 0;
                    last_obj = phase_objective(2);
                    continue;
                }
                status_ = LpStatus::Optimal;
                return finish();
            }

            // Direction of basic change per unit step of the entering variable.
            w.assign(static_cast<std::size_t>(m), 0.0);
            for_col(c_, q, [&](int i, double v) { w[static_cast<std::size_t>(i)] = v; });
            factor_.ftran(w);
            w_nz.clear();
            for (int p = 0; p < m; ++p)
                if (std::fabs(w[static_cast<std::size_t>(p)]) > 1e-11) w_nz.push_back(p);

            // Ratio test.
            const double width = c_.up[static_cast<std::size_t>(q)] - c_.lo[static_cast<std::size_t>(q)];
            double t_min = width;  // may be +inf
            for (int p : w_nz) {
                const double ratio = blocking_ratio(phase, p, dir, w[static_cast<std::size_t>(p)]);
                if (ratio < t_min) t_min = ratio;
            }

            if (t_min == kInfinity) {
                if (phase == 1)
                    throw SolverNumericalError("phase-1 ray; numerical breakdown");
                status_ = LpStatus::Unbounded;
                return finish();
            }

            // Leaving candidate: near-minimal ratio, largest pivot magnitude
            // (Bland mode: lowest variable index).
            const double tie = t_min + 1e-9 * (1.0 + std::fabs(t_min));
            int r = -1;
            double r_piv = 0.0;
            for (int p : w_nz) {
                const double ratio = blocking_ratio(phase, p, dir, w[static_cast<std::size_t>(p)]);
                if (ratio > tie) continue;
                if (bland) {
                    if (r == -1 || basic_[static_cast<std::size_t>(p)] < basic_[static_cast<std::size_t>(r)]) r = p;
                } else if (std::fabs(w[static_cast<std::size_t>(p)]) > r_piv) {
                    r = p;
                    r_piv = std::fabs(w[static_cast<std::size_t>(p)]);
                }
            }

            double applied_step;
            if (r == -1 || width <= t_min) {
                // Bound flip: the entering variable crosses to its other bound.
                applied_step = width;
                apply_step(q, dir, width, w, w_nz);
                vstat_[static_cast<std::size_t>(q)] =
                    (dir > 0) ? VStat::AtUpper : VStat::AtLower;
                x_[static_cast<std::size_t>(q)] =
                    (dir > 0) ? c_.up[static_cast<std::size_t>(q)] : c_.lo[static_cast<std::size_t>(q)];
            } else {
                applied_step = std::max(0.0, t_min);
                apply_step(q, dir, applied_step, w, w_nz);
                const int leaving = basic_[static_cast<std::size_t>(r)];
                snap_leaving(leaving);
                basic_[static_cast<std::size_t>(r)] = q;
                vstat_[static_cast<std::size_t>(q)] = VStat::Basic;
                if (!factor_.update(r, w, w_nz)) {
                    if (!refactorize()) return fail_solution();
                    compute_basic_values();
                    if (phase == 2) obj_track = phase_objective(2);
                } else if (factor_.eta_count() >= 100) {
                    if (!refactorize()) return fail_solution();
                    compute_basic_values();
                    if (phase == 2) obj_track = phase_objective(2);
                }
            }

            // Stall detection drives the Bland fallback; the phase-2 objective
            // is tracked incrementally from the entering reduced cost.
            double obj;
            if (phase == 1) {
                double total = 0.0, worst = 0.0;
                violation_stats(total, worst);
                obj = total;
                if (worst <= kFeasTol) {
                    phase = 2;
                    bland = false;
                    stall = 0;
                    obj_track = phase_objective(2);
                    last_obj = obj_track;
                    continue;
                }
            } else {
                obj_track += d_entering * dir * applied_step;
                obj = obj_track;
            }
            if (obj < last_obj - 1e-10 * (1.0 + std::fabs(last_obj))) {
                last_obj = obj;
                stall = 0;
                bland = false;
            } else if (++stall > 300) {
                bland = true;
            }
        }
    }

private:
    CoreSolution fail_solution() {
        throw SolverNumericalError("basis factorization failed beyond repair");
    }

    CoreSolution finish() {
        if (status_ == LpStatus::Optimal) {
            // One clean refresh of the basic values from a fresh factorization.
            std::vector<int> unpiv;
            if (factor_.factorize(c_, basic_, unpiv)) compute_basic_values();
        }
        CoreSolution out;
        out.status = status_;
        out.iterations = iterations_;
        if (status_ == LpStatus::Optimal)
            out.values.assign(x_.begin(), x_.begin() + c_.n_struct);
        return out;
    }

    double work_cost(int phase, int col, int pos) const {
        if (phase == 2) return c_.cost[static_cast<std::size_t>(col)];
        (void)pos;
        const double v = x_[static_cast<std::size_t>(col)];
        if (v < c_.lo[static_cast<std::size_t>(col)] - kFeasTol) return -1.0;
        if (v > c_.up[static_cast<std::size_t>(col)] + kFeasTol) return 1.0;
        return 0.0;
    }

    // Step at which basic position p blocks, +inf when it never does.
    double blocking_ratio(int phase, int p, int dir, double wp) const {
        const int col = basic_[static_cast<std::size_t>(p)];
        const double delta = -dir * wp;  // d x_col / d t
        const double v = x_[static_cast<std::size_t>(col)];
        const double lo = c_.lo[static_cast<std::size_t>(col)];
        const double up = c_.up[static_cast<std::size_t>(col)];
        if (phase == 1 && v < lo - kFeasTol) {
            if (delta > 0.0) return (lo - v) / delta;
            return kInfinity;
        }
        if (phase == 1 && v > up + kFeasTol) {
            if (delta < 0.0) return (up - v) / delta;
            return kInfinity;
        }
        if (delta > 0.0) {
            if (up == kInfinity) return kInfinity;
            return std::max(0.0, (up - v) / delta);
        }
        if (delta < 0.0) {
            if (lo == -kInfinity) return kInfinity;
            return std::max(0.0, (lo - v) / delta);
        }
        return kInfinity;
    }

    void apply_step(int q, int dir, double t, const std::vector<double>& w,
                    const std::vector<int>& w_nz) {
        if (t == 0.0) return;
        x_[static_cast<std::size_t>(q)] += dir * t;
        for (int p : w_nz)
            x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(p)])] -=
                dir * t * w[static_cast<std::size_t>(p)];
    }

    // Places the leaving variable exactly on the bound it blocked at; after
    // apply_step its value already sits next to that bound, so the nearest
    // finite bound is the right one in both phases.
    void snap_leaving(int col) {
        const double lo = c_.lo[static_cast<std::size_t>(col)];
        const double up = c_.up[static_cast<std::size_t>(col)];
        const double v = x_[static_cast<std::size_t>(col)];
        if (lo == -kInfinity && up == kInfinity) {
            vstat_[static_cast<std::size_t>(col)] = VStat::FreeZero;
            x_[static_cast<std::size_t>(col)] = 0.0;
            return;
        }
        const double dlo = (lo == -kInfinity) ? kInfinity : std::fabs(v - lo);
        const double dup = (up == kInfinity) ? kInfinity : std::fabs(v - up);
        if (dlo <= dup) {
            vstat_[static_cast<std::size_t>(col)] = VStat::AtLower;
            x_[static_cast<std::size_t>(col)] = lo;
        } else {
            vstat_[static_cast<std::size_t>(col)] = VStat::AtUpper;
            x_[static_cast<std::size_t>(col)] = up;
        }
    }

    // Equality rows prefer a dedicated structural column over their fixed
    // logical; this removes most phase-1 work on dispatch problems.
    void crash_basis() {
        const int m = c_.m;
        for (int i = 0; i < m; ++i) basic_[static_cast<std::size_t>(i)] = c_.n_struct + i;
        std::vector<int> support(static_cast<std::size_t>(c_.n_struct), 0);
        std::vector<int> only_row(static_cast<std::size_t>(c_.n_struct), -1);
        std::vector<double> only_val(static_cast<std::size_t>(c_.n_struct), 0.0);
        for (int j = 0; j < c_.n_struct; ++j) {
            const std::size_t b = c_.col_ptr[static_cast<std::size_t>(j)];
            const std::size_t e = c_.col_ptr[static_cast<std::size_t>(j) + 1];
            support[static_cast<std::size_t>(j)] = static_cast<int>(e - b);
            if (e - b == 1) {
                only_row[static_cast<std::size_t>(j)] = c_.col_row[b];
                only_val[static_cast<std::size_t>(j)] = c_.col_val[b];
            }
        }
        std::vector<int> pick(static_cast<std::size_t>(m), -1);
        std::vector<double> pick_mag(static_cast<std::size_t>(m), 0.0);
        for (int j = 0; j < c_.n_struct; ++j) {
            if (support[static_cast<std::size_t>(j)] != 1) continue;
            if (c_.up[static_cast<std::size_t>(j)] - c_.lo[static_cast<std::size_t>(j)] <= 0.0) continue;
            const int i = only_row[static_cast<std::size_t>(j)];
            const int lj = c_.n_struct + i;
            if (c_.up[static_cast<std::size_t>(lj)] != c_.lo[static_cast<std::size_t>(lj)])
                continue;  // not an equality row, the logical is fine
            const double mag = std::fabs(only_val[static_cast<std::size_t>(j)]);
            if (mag < 1e-7) continue;
            if (pick[static_cast<std::size_t>(i)] == -1 || mag > pick_mag[static_cast<std::size_t>(i)]) {
                pick[static_cast<std::size_t>(i)] = j;
                pick_mag[static_cast<std::size_t>(i)] = mag;
            }
        }
        for (int i = 0; i < m; ++i) {
            if (pick[static_cast<std::size_t>(i)] == -1) continue;
            basic_[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i)];
            vstat_[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])] = VStat::Basic;
            const int lj = c_.n_struct + i;
            vstat_[static_cast<std::size_t>(lj)] = VStat::AtLower;
            x_[static_cast<std::size_t>(lj)] = c_.lo[static_cast<std::size_t>(lj)];
        }
        for (int i = 0; i < m; ++i) {
            const int col = basic_[static_cast<std::size_t>(i)];
            vstat_[static_cast<std::size_t>(col)] = VStat::Basic;
        }
    }

    bool refactorize() {
        std::vector<int> unpivoted;
        if (factor_.factorize(c_, basic_, unpivoted)) return true;
        // Singular basis: patch logical columns into the unfactorable rows.
        // The displaced structurals return to their nearest bound.
        std::vector<char> is_basic(static_cast<std::size_t>(c_.num_cols()), 0);
        for (int p = 0; p < c_.m; ++p) is_basic[static_cast<std::size_t>(basic_[static_cast<std::size_t>(p)])] = 1;
        std::size_t next = 0;
        for (int p = 0; p < c_.m && next < unpivoted.size(); ++p) {
            const int lj = c_.n_struct + unpivoted[next];
            if (is_basic[static_cast<std::size_t>(lj)]) {
                ++next;
                --p;
                continue;
            }
            const int col = basic_[static_cast<std::size_t>(p)];
            if (col >= c_.n_struct) continue;  // keep logicals where they are
            // Demote this structural.
            if (c_.lo[static_cast<std::size_t>(col)] != -kInfinity) {
                vstat_[static_cast<std::size_t>(col)] = VStat::AtLower;
                x_[static_cast<std::size_t>(col)] = c_.lo[static_cast<std::size_t>(col)];
            } else if (c_.up[static_cast<std::size_t>(col)] != kInfinity) {
                vstat_[static_cast<std::size_t>(col)] = VStat::AtUpper;
                x_[static_cast<std::size_t>(col)] = c_.up[static_cast<std::size_t>(col)];
            } else {
                vstat_[static_cast<std::size_t>(col)] = VStat::FreeZero;
                x_[static_cast<std::size_t>(col)] = 0.0;
            }
            basic_[static_cast<std::size_t>(p)] = lj;
            vstat_[static_cast<std::size_t>(lj)] = VStat::Basic;
            ++next;
        }
        std::vector<int> still;
        return factor_.factorize(c_, basic_, still);
    }

    void compute_basic_values() {
        const int m = c_.m;
        std::vector<double> rhs(c_.rhs);
        for (int j = 0; j < c_.num_cols(); ++j) {
            if (vstat_[static_cast<std::size_t>(j)] == VStat::Basic) continue;
            const double v = x_[static_cast<std::size_t>(j)];
            if (v == 0.0) continue;
            for_col(c_, j, [&](int i, double a) { rhs[static_cast<std::size_t>(i)] -= a * v; });
        }
        factor_.ftran(rhs);
        for (int p = 0; p < m; ++p)
            x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(p)])] = rhs[static_cast<std::size_t>(p)];
    }

    double current_max_violation() const {
        double total, worst;
        violation_stats(total, worst);
        return worst;
    }

    void violation_stats(double& total, double& worst) const {
        total = 0.0;
        worst = 0.0;
        for (int p = 0; p < c_.m; ++p) {
            const int col = basic_[static_cast<std::size_t>(p)];
            const double v = x_[static_cast<std::size_t>(col)];
            const double below = c_.lo[static_cast<std::size_t>(col)] - v;
            const double above = v - c_.up[static_cast<std::size_t>(col)];
            if (below > 0.0) {
                total += below;
                worst = std::max(worst, below);
            }
            if (above > 0.0) {
                total += above;
                worst = std::max(worst, above);
            }
        }
    }

    double phase_objective(int phase) const {
        if (phase == 1) {
            double f = 0.0;
            for (int p = 0; p < c_.m; ++p) {
                const int col = basic_[static_cast<std::size_t>(p)];
                const double v = x_[static_cast<std::size_t>(col)];
                f += std::max(0.0, c_.lo[static_cast<std::size_t>(col)] - v);
                f += std::max(0.0, v - c_.up[static_cast<std::size_t>(col)]);
            }
            return f;
        }
        double obj = 0.0;
        for (int j = 0; j < c_.num_cols(); ++j)
            obj += c_.cost[static_cast<std::size_t>(j)] * x_[static_cast<std::size_t>(j)];
        return obj;
    }

    const CoreLp& c_;
    BasisFactor factor_;
    std::vector<int> basic_;
    std::vector<VStat> vstat_;
    std::vector<double> x_;
    LpStatus status_ = LpStatus::Infeasible;
    long iterations_ = 0;
};

} // namespace

CoreSolution simplex_solve(const CoreLp& core) { return Simplex(core).run(); }

} // namespace h2plan::detail
