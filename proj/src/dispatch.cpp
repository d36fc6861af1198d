#include "h2plan/dispatch.hpp"

#include <cmath>
#include <string>

#include "h2plan/errors.hpp"

namespace h2plan {

void PlantConfig::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be positive");
    };
    positive(solar_mw, "solar_mw");
    positive(wind_mw, "wind_mw");
    positive(inverter_mw, "inverter_mw");
    positive(electrolyser_mw, "electrolyser_mw");
    positive(grid_mw, "grid_mw");
    positive(lhv_h2_mj_per_kg, "lhv_h2_mj_per_kg");
    positive(delta_t_hours, "delta_t_hours");
    if (!(eta_inverter > 0.0 && eta_inverter <= 1.0)) throw ConfigError("eta_inverter outside (0,1]");
    if (!(eta_lhv > 0.0 && eta_lhv <= 1.0)) throw ConfigError("eta_lhv outside (0,1]");
    if (!(ramp_up > 0.0 && ramp_up <= 1.0)) throw ConfigError("ramp_up outside (0,1]");
    if (!(ramp_up_cold > 0.0 && ramp_up_cold <= 1.0)) throw ConfigError("ramp_up_cold outside (0,1]");
    if (!(ramp_down > 0.0 && ramp_down <= 1.0)) throw ConfigError("ramp_down outside (0,1]");
    if (!(lifetime_years >= 1.0)) throw ConfigError("lifetime_years must be >= 1");
    if (!(discount_rate >= 0.0)) throw ConfigError("discount_rate must be >= 0");
    if (!(co2_price_eur_per_kg >= 0.0)) throw ConfigError("co2_price_eur_per_kg must be >= 0");
}

double PlantConfig::electrolyser_annualised_capital_eur() const {
    double annuity;
    if (discount_rate == 0.0) {
        annuity = electrolyser_capex_eur_per_mw / lifetime_years;
    } else {
        annuity = electrolyser_capex_eur_per_mw * discount_rate /
                  (1.0 - std::pow(1.0 + discount_rate, -lifetime_years));
    }
    return (fixed_om_eur_per_mw_year + annuity) * electrolyser_mw;
}

double DispatchResult::total_h2_kg() const {
    double s = 0.0;
    for (double v : m) s += v;
    return s;
}

std::pair<LpProblem, DispatchVariables> build_dispatch(const ScenarioSlice& slice,
                                                       const PlantConfig& plant,
                                                       double f4_init, double alpha,
                                                       const MassConstraintSpec& mass_spec) {
    plant.validate();
    const std::size_t T = slice.n_hours();
    if (T == 0) throw Error("empty slice");
    if (f4_init < 0.0 || f4_init > 1.0) throw Error("f4_init outside [0,1]");
    if (alpha < 0.0 || alpha > 1.0) throw Error("alpha outside [0,1]");

    const double dt = plant.delta_t_hours;
    const double kg_per_mwh_h2 = 3600.0 * dt / plant.lhv_h2_mj_per_kg;  // m = this * gH2

    LpProblem p;
    DispatchVariables v;
    auto resize = [&](std::vector<int>& a) { a.resize(T); };
    resize(v.g1); resize(v.g1c); resize(v.g2); resize(v.g2c);
    resize(v.g3dc); resize(v.g3ac); resize(v.g4); resize(v.gh2);
    resize(v.g5i); resize(v.g5e); resize(v.m);

    for (std::size_t t = 0; t < T; ++t) {
        v.g1[t] = p.add_variable(0.0, kInfinity);
        v.g1c[t] = p.add_variable(0.0, kInfinity);
        v.g2[t] = p.add_variable(0.0, kInfinity);
        v.g2c[t] = p.add_variable(0.0, kInfinity);
        v.g3dc[t] = p.add_variable(0.0, plant.inverter_mw / plant.eta_inverter);
        v.g3ac[t] = p.add_variable(0.0, kInfinity);
        v.g4[t] = p.add_variable(0.0, plant.electrolyser_mw);
        v.gh2[t] = p.add_variable(0.0, kInfinity);
        v.g5i[t] = p.add_variable(0.0, plant.grid_mw);
        v.g5e[t] = p.add_variable(0.0, plant.grid_mw);
        v.m[t] = p.add_variable(0.0, kInfinity);
    }

    for (std::size_t t = 0; t < T; ++t) {
        // Solar output net of curtailment, DC bus, inverter coupling.
        p.add_constraint({{v.g1[t], 1.0}, {v.g1c[t], 1.0}}, Sense::Equal,
                         plant.solar_mw * slice.cf_solar[t]);
        p.add_constraint({{v.g1[t], 1.0}, {v.g3dc[t], -1.0}}, Sense::Equal, 0.0);
        p.add_constraint({{v.g3ac[t], 1.0}, {v.g3dc[t], -plant.eta_inverter}}, Sense::Equal, 0.0);
        // Wind output net of curtailment.
        p.add_constraint({{v.g2[t], 1.0}, {v.g2c[t], 1.0}}, Sense::Equal,
                         plant.wind_mw * slice.cf_wind[t]);
        // AC bus balance.
        p.add_constraint({{v.g2[t], 1.0}, {v.g3ac[t], 1.0}, {v.g4[t], -1.0},
                          {v.g5i[t], 1.0}, {v.g5e[t], -1.0}},
                         Sense::Equal, 0.0);
        // Electrolyser energy balance and hydrogen mass.
        p.add_constraint({{v.gh2[t], 1.0}, {v.g4[t], -plant.eta_lhv}}, Sense::Equal, 0.0);
        p.add_constraint({{v.m[t], 1.0}, {v.gh2[t], -kg_per_mwh_h2}}, Sense::Equal, 0.0);
    }

    // Ramping, including the t=0 link to the initial capacity factor. Both
    // up-rates apply unconditionally, as the model is stated.
    const double g4_cap = plant.electrolyser_mw;
    const double up1 = g4_cap * plant.ramp_up;
    const double up2 = g4_cap * plant.ramp_up_cold;
    const double down = g4_cap * plant.ramp_down;
    const double g4_init = f4_init * g4_cap;
    p.add_constraint({{v.g4[0], 1.0}}, Sense::LessEqual, g4_init + up1);
    p.add_constraint({{v.g4[0], 1.0}}, Sense::LessEqual, g4_init + up2);
    p.add_constraint({{v.g4[0], 1.0}}, Sense::GreaterEqual, g4_init - down);
    for (std::size_t t = 0; t + 1 < T; ++t) {
        p.add_constraint({{v.g4[t + 1], 1.0}, {v.g4[t], -1.0}}, Sense::LessEqual, up1);
        p.add_constraint({{v.g4[t + 1], 1.0}, {v.g4[t], -1.0}}, Sense::LessEqual, up2);
        p.add_constraint({{v.g4[t], 1.0}, {v.g4[t + 1], -1.0}}, Sense::LessEqual, down);
    }

    // Hydrogen mass requirements.
    if (const auto* pf = std::get_if<PlanFollow>(&mass_spec)) {
        if (pf->hourly_kg.size() != T)
            throw Error("PlanFollow length " + std::to_string(pf->hourly_kg.size()) +
                        " does not match horizon " + std::to_string(T));
        for (std::size_t t = 0; t < T; ++t)
            p.add_constraint({{v.m[t], 1.0}}, Sense::Equal, pf->hourly_kg[t]);
    } else if (const auto* ds = std::get_if<DailySum>(&mass_spec)) {
        if (T < 24) throw Error("DailySum needs at least 24 hours");
        std::vector<LpTerm> day;
        for (std::size_t t = 0; t < 24; ++t) day.push_back({v.m[t], 1.0});
        p.add_constraint(day, Sense::Equal, ds->committed_kg);
        if (T > 24 && ds->advisory_kg.has_value()) {
            std::vector<LpTerm> tail;
            for (std::size_t t = 24; t < std::min<std::size_t>(T, 34); ++t)
                tail.push_back({v.m[t], 1.0});
            p.add_constraint(tail, Sense::Equal, *ds->advisory_kg);
        }
    } else if (const auto* wt = std::get_if<WindowTotal>(&mass_spec)) {
        std::vector<LpTerm> all;
        for (std::size_t t = 0; t < T; ++t) all.push_back({v.m[t], 1.0});
        p.add_constraint(all, wt->sense, wt->total_kg);
    } else if (const auto* pt = std::get_if<PeriodTargets>(&mass_spec)) {
        for (const PeriodTarget& target : pt->targets) {
            if (target.start_hour + target.n_hours > T || target.n_hours == 0)
                throw Error("period target outside horizon");
            std::vector<LpTerm> terms;
            for (std::size_t t = target.start_hour; t < target.start_hour + target.n_hours; ++t)
                terms.push_back({v.m[t], 1.0});
            p.add_constraint(terms, Sense::GreaterEqual, target.mass_kg);
        }
    }

    // Weighted objective: alpha on monetised import emissions, (1-alpha) on
    // net electricity plus operation costs.
    std::vector<LpTerm> obj;
    const double w_cost = 1.0 - alpha;
    for (std::size_t t = 0; t < T; ++t) {
        const double import_coef = alpha * plant.co2_price_eur_per_kg * dt * slice.co2_intensity[t] +
                                   w_cost * dt * slice.price[t] + w_cost * dt * plant.op_cost_grid;
        const double export_coef = -w_cost * dt * slice.price[t] + w_cost * dt * plant.op_cost_grid;
        if (import_coef != 0.0) obj.push_back({v.g5i[t], import_coef});
        if (export_coef != 0.0) obj.push_back({v.g5e[t], export_coef});
        if (plant.op_cost_solar != 0.0) obj.push_back({v.g1[t], w_cost * dt * plant.op_cost_solar});
        if (plant.op_cost_wind != 0.0) obj.push_back({v.g2[t], w_cost * dt * plant.op_cost_wind});
        if (plant.op_cost_inverter != 0.0)
            obj.push_back({v.g3ac[t], w_cost * dt * plant.op_cost_inverter});
        if (plant.op_cost_electrolyser != 0.0)
            obj.push_back({v.g4[t], w_cost * dt * plant.op_cost_electrolyser});
    }
    p.set_objective(obj);

    return {std::move(p), std::move(v)};
}

namespace {

double at(const LpSolution& s, int var) { return s.values[static_cast<std::size_t>(var)]; }

} // namespace

DispatchResult extract_flows(const LpSolution& solution, const DispatchVariables& vars,
                             const ScenarioSlice& slice, const PlantConfig& plant) {
    if (solution.status != LpStatus::Optimal)
        throw NotOptimal("extract_flows requires an Optimal solution");
    const std::size_t T = vars.horizon();
    if (slice.n_hours() != T) throw Error("slice/variable horizon mismatch");

    DispatchResult r;
    auto pull = [&](const std::vector<int>& ids, std::vector<double>& out) {
        out.resize(T);
        for (std::size_t t = 0; t < T; ++t) out[t] = at(solution, ids[t]);
    };
    pull(vars.g1, r.g1); pull(vars.g1c, r.g1c);
    pull(vars.g2, r.g2); pull(vars.g2c, r.g2c);
    pull(vars.g3dc, r.g3dc); pull(vars.g3ac, r.g3ac);
    pull(vars.g4, r.g4); pull(vars.gh2, r.gh2);
    pull(vars.g5i, r.g5i); pull(vars.g5e, r.g5e);
    pull(vars.m, r.m);
    r.f4.resize(T);
    for (std::size_t t = 0; t < T; ++t) r.f4[t] = r.g4[t] / plant.electrolyser_mw;

    // Re-verify the physics independent of the solver's own checks.
    const double tol = 1e-6 * plant.electrolyser_mw;
    auto check = [&](bool ok, const char* what, std::size_t t) {
        if (!ok)
            throw InternalConsistency(std::string(what) + " violated at hour " + std::to_string(t));
    };
    const double kg_per_mwh_h2 = 3600.0 * plant.delta_t_hours / plant.lhv_h2_mj_per_kg;
    for (std::size_t t = 0; t < T; ++t) {
        check(std::fabs(r.g1[t] + r.g1c[t] - plant.solar_mw * slice.cf_solar[t]) <= tol, "solar balance", t);
        check(std::fabs(r.g1[t] - r.g3dc[t]) <= tol, "DC bus balance", t);
        check(std::fabs(r.g3ac[t] - plant.eta_inverter * r.g3dc[t]) <= tol, "inverter balance", t);
        check(std::fabs(r.g2[t] + r.g2c[t] - plant.wind_mw * slice.cf_wind[t]) <= tol, "wind balance", t);
        check(std::fabs(r.g2[t] + r.g3ac[t] - r.g4[t] + r.g5i[t] - r.g5e[t]) <= tol, "AC bus balance", t);
        check(std::fabs(r.gh2[t] - plant.eta_lhv * r.g4[t]) <= tol, "electrolyser balance", t);
        check(std::fabs(r.m[t] - kg_per_mwh_h2 * r.gh2[t]) <= tol * kg_per_mwh_h2, "hydrogen mass", t);
        check(r.g1[t] >= -tol && r.g1c[t] >= -tol && r.g2[t] >= -tol && r.g2c[t] >= -tol, "nonnegativity", t);
        check(r.g4[t] <= plant.electrolyser_mw + tol, "electrolyser capacity", t);
        check(r.g5i[t] <= plant.grid_mw + tol && r.g5e[t] <= plant.grid_mw + tol, "grid capacity", t);
    }
    // Ramp audit against the initial state is the caller's business (it knows
    // f4_init); consecutive-hour ramps are checked here.
    const double rtol = tol;
    for (std::size_t t = 0; t + 1 < T; ++t) {
        const double d = r.g4[t + 1] - r.g4[t];
        check(d <= plant.electrolyser_mw * std::min(plant.ramp_up, plant.ramp_up_cold) + rtol,
              "ramp up", t);
        check(-d <= plant.electrolyser_mw * plant.ramp_down + rtol, "ramp down", t);
    }
    return r;
}

CostBreakdown cost_components(const DispatchResult& result, const ScenarioSlice& slice,
                              const PlantConfig& plant, double alpha) {
    const std::size_t T = result.n_hours();
    if (slice.n_hours() != T) throw Error("slice/result horizon mismatch");
    const double dt = plant.delta_t_hours;

    CostBreakdown c;
    for (std::size_t t = 0; t < T; ++t) {
        c.electricity_eur += dt * (result.g5i[t] - result.g5e[t]) * slice.price[t];
        c.co2_kg += dt * result.g5i[t] * slice.co2_intensity[t];
        c.operation_eur += dt * (plant.op_cost_solar * result.g1[t] +
                                 plant.op_cost_wind * result.g2[t] +
                                 plant.op_cost_inverter * result.g3ac[t] +
                                 plant.op_cost_electrolyser * result.g4[t] +
                                 plant.op_cost_grid * (result.g5i[t] + result.g5e[t]));
    }
    c.co2_cost_eur = plant.co2_price_eur_per_kg * c.co2_kg;
    c.capital_eur = plant.electrolyser_annualised_capital_eur() *
                    (static_cast<double>(T) * dt / 8760.0);
    c.weighted_eur = alpha * c.co2_cost_eur + (1.0 - alpha) * (c.electricity_eur + c.operation_eur);
    return c;
}

} // namespace h2plan
