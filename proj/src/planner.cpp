#include "h2plan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "h2plan/errors.hpp"

namespace h2plan {

double ContractState::remaining_target_kg() const {
    return std::max(0.0, period_target_kg - produced_so_far_kg);
}

void ContractState::validate() const {
    if (produced_so_far_kg < 0.0) throw Error("produced_so_far_kg negative");
    if (period_target_kg < 0.0) throw Error("period_target_kg negative");
    if (remaining_hours_in_period == 0 || remaining_hours_in_period % 24 != 0)
        throw Error("remaining_hours_in_period must be a positive multiple of 24");
}

namespace {

// Sum of the committed-day hourly masses of a solved window.
double first_day_mass(const DispatchResult& r) {
    double s = 0.0;
    for (std::size_t t = 0; t < std::min<std::size_t>(24, r.m.size()); ++t) s += r.m[t];
    return s;
}

// Replaces the objective with +/- the total mass over [from, to) and solves.
double mass_extremum(LpProblem& lp, const DispatchVariables& vars, std::size_t from,
                     std::size_t to, bool maximize) {
    std::vector<LpTerm> obj;
    for (std::size_t t = from; t < to; ++t)
        obj.push_back({vars.m[t], maximize ? -1.0 : 1.0});
    lp.set_objective(obj);
    LpSolution sol = solve(lp);
    if (sol.status != LpStatus::Optimal)
        throw Error("mass envelope LP unexpectedly " +
                    std::string(sol.status == LpStatus::Infeasible ? "infeasible" : "unbounded"));
    double total = 0.0;
    for (std::size_t t = from; t < to; ++t) total += sol.values[static_cast<std::size_t>(vars.m[t])];
    return total;
}

} // namespace

DailyMassBounds feasible_daily_mass_bounds(const PlantConfig& plant, double f4_init) {
    // Flat slice: no renewables, the grid carries the electrolyser.
    ScenarioSlice flat;
    flat.cf_solar.assign(24, 0.0);
    flat.cf_wind.assign(24, 0.0);
    flat.price.assign(24, 0.0);
    flat.co2_intensity.assign(24, 0.0);

    auto [lp, vars] = build_dispatch(flat, plant, f4_init, 0.0,
                                     WindowTotal{0.0, Sense::GreaterEqual});
    DailyMassBounds b;
    b.max_kg = mass_extremum(lp, vars, 0, 24, true);
    b.min_kg = mass_extremum(lp, vars, 0, 24, false);
    return b;
}

double filter_mass(double m_star_kg, const DailyMassBounds& bounds) {
    if (bounds.min_kg > bounds.max_kg) throw Error("inverted mass bounds");
    return std::clamp(m_star_kg, bounds.min_kg, bounds.max_kg);
}

double long_term_mass(const ScenarioData& scenario, const ContractState& state,
                      const PlantConfig& plant, double alpha, double f4_init,
                      std::size_t next_day_start) {
    state.validate();
    const std::size_t remaining = state.remaining_hours_in_period;
    const double target = state.remaining_target_kg();

    // A day contract has nothing to distribute, and on the final planning day
    // the planner hands over whatever is still owed.
    if (state.period_kind == PeriodKind::Day || remaining == 24) return target;

    ScenarioSlice win;
    double window_target = target;
    if (remaining <= 48) {
        // Last two planning days run on actual data alone.
        win = window(scenario, next_day_start, remaining);
    } else {
        try {
            win = build_planning_window(scenario, next_day_start, remaining);
        } catch (const InsufficientHistory&) {
            // Early in the dataset: shrink to what exists and scale the
            // target with the window length.
            const std::size_t history_avail = (next_day_start / 24) * 24;
            const std::size_t len = std::max<std::size_t>(
                24, std::min(remaining, 34 + history_avail));
            win = build_planning_window(scenario, next_day_start, len);
            window_target = target * static_cast<double>(len) / static_cast<double>(remaining);
        }
    }

    auto [lp, vars] = build_dispatch(win, plant, f4_init, alpha,
                                     WindowTotal{window_target, Sense::Equal});
    LpSolution sol = solve(lp);
    if (sol.status != LpStatus::Optimal)
        throw WindowInfeasible("window of " + std::to_string(win.n_hours()) +
                               " h cannot meet the remaining " + std::to_string(window_target) +
                               " kg");
    DispatchResult flows = extract_flows(sol, vars, win, plant);
    return first_day_mass(flows);
}

DailyPlan daily_plan(const ScenarioSlice& slice34, const PlantConfig& plant, double f4_init,
                     double alpha, double m_hat_kg, const ContractState& state) {
    (void)state;
    const std::size_t T = slice34.n_hours();
    if (T < 24) throw Error("daily planner slice must cover the committed day");
    if (m_hat_kg < -1e-9) throw Error("negative committed mass");
    m_hat_kg = std::max(0.0, m_hat_kg);
    const std::size_t tail_hours = std::min<std::size_t>(T, 34) - 24;

    // Advisory tail: the committed day's own rate, clamped to what the plant
    // can actually do after honouring the commitment.
    std::optional<double> advisory;
    if (tail_hours > 0) {
        auto [aux_lp, aux_vars] =
            build_dispatch(slice34, plant, f4_init, alpha, DailySum{m_hat_kg, std::nullopt});
        const double tail_max = mass_extremum(aux_lp, aux_vars, 24, 24 + tail_hours, true);
        const double tail_min = mass_extremum(aux_lp, aux_vars, 24, 24 + tail_hours, false);
        const double wanted = m_hat_kg * static_cast<double>(tail_hours) / 24.0;
        advisory = std::clamp(wanted, tail_min, tail_max);
    }

    auto [lp, vars] = build_dispatch(slice34, plant, f4_init, alpha, DailySum{m_hat_kg, advisory});
    LpSolution sol = solve(lp);
    if (sol.status != LpStatus::Optimal)
        throw PlanInfeasible("daily plan infeasible after filtering; committed " +
                             std::to_string(m_hat_kg) + " kg");

    DailyPlan plan;
    plan.expected = extract_flows(sol, vars, slice34, plant);
    plan.committed_kg.assign(plan.expected.m.begin(), plan.expected.m.begin() + 24);
    plan.advisory_kg.assign(plan.expected.m.begin() + 24,
                            plan.expected.m.begin() + static_cast<std::ptrdiff_t>(24 + tail_hours));
    plan.f4_end = plan.expected.g4[23] / plant.electrolyser_mw;
    return plan;
}

} // namespace h2plan
