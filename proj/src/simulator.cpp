#include "h2plan/simulator.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>

#include "h2plan/errors.hpp"

namespace h2plan {

namespace {

void append(std::vector<double>& dst, const std::vector<double>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

void append_result(DispatchResult& all, const DispatchResult& day) {
    append(all.g1, day.g1);
    append(all.g1c, day.g1c);
    append(all.g2, day.g2);
    append(all.g2c, day.g2c);
    append(all.g3dc, day.g3dc);
    append(all.g3ac, day.g3ac);
    append(all.g4, day.g4);
    append(all.gh2, day.gh2);
    append(all.g5i, day.g5i);
    append(all.g5e, day.g5e);
    append(all.m, day.m);
    append(all.f4, day.f4);
}

void require_day_aligned(const ScenarioData& scenario) {
    if (scenario.n_hours() % 24 != 0)
        throw ConfigError("scenario must span whole days, got " +
                          std::to_string(scenario.n_hours()) + " hours");
}

} // namespace

const char* period_kind_name(PeriodKind kind) {
    switch (kind) {
        case PeriodKind::Day: return "day";
        case PeriodKind::Week: return "week";
        case PeriodKind::Month: return "month";
        case PeriodKind::Year: return "year";
    }
    return "?";
}

PeriodKind period_kind_from_name(const std::string& name) {
    if (name == "day") return PeriodKind::Day;
    if (name == "week") return PeriodKind::Week;
    if (name == "month") return PeriodKind::Month;
    if (name == "year") return PeriodKind::Year;
    throw ConfigError("unknown delivery period '" + name + "'");
}

std::vector<std::pair<std::size_t, std::size_t>> contract_periods(const ScenarioData& scenario,
                                                                  PeriodKind kind) {
    require_day_aligned(scenario);
    const std::size_t n = scenario.n_hours();
    std::vector<std::pair<std::size_t, std::size_t>> periods;
    switch (kind) {
        case PeriodKind::Day:
            for (std::size_t h = 0; h < n; h += 24) periods.push_back({h, 24});
            break;
        case PeriodKind::Week:
            if (n % 168 != 0)
                throw ConfigError("weekly delivery needs a whole number of weeks; got " +
                                  std::to_string(n) + " hours");
            for (std::size_t h = 0; h < n; h += 168) periods.push_back({h, 168});
            break;
        case PeriodKind::Month: {
            if (scenario.start_epoch_hour % 24 != 0)
                throw ConfigError("monthly delivery needs a midnight-aligned scenario start");
            std::int64_t day = scenario.start_epoch_hour / 24;
            CivilDate d = civil_from_days(day);
            if (d.day != 1)
                throw ConfigError("monthly delivery needs the scenario to start on the 1st");
            std::size_t h = 0;
            while (h < n) {
                CivilDate next{d.month == 12 ? d.year + 1 : d.year,
                               d.month == 12 ? 1u : d.month + 1, 1};
                const std::size_t hours =
                    static_cast<std::size_t>((days_from_civil(next) - days_from_civil(d)) * 24);
                if (h + hours > n)
                    throw ConfigError("scenario ends inside a calendar month");
                periods.push_back({h, hours});
                h += hours;
                d = next;
            }
            break;
        }
        case PeriodKind::Year:
            periods.push_back({0, n});
            break;
    }
    return periods;
}

DispatchResult execute_day(const DailyPlan& plan, const ScenarioSlice& actual_day,
                           const PlantConfig& plant, double f4_init) {
    if (actual_day.n_hours() != plan.committed_kg.size())
        throw Error("actual slice does not match the committed plan length");
    auto [lp, vars] = build_dispatch(actual_day, plant, f4_init, 0.0,
                                     PlanFollow{plan.committed_kg});
    // The mass profile is fixed; the weighted objective only shapes the
    // import/export/curtailment split, and alpha only matters for the split
    // under identical prices, which cost_components reports either way.
    LpSolution sol = solve(lp);
    if (sol.status != LpStatus::Optimal)
        throw PlanInfeasible("committed plan cannot be executed from f4 = " +
                             std::to_string(f4_init));
    return extract_flows(sol, vars, actual_day, plant);
}

SimulationReport run_day_to_day(const ScenarioData& scenario, const PlantConfig& plant,
                                const DeliveryContract& contract, double alpha) {
    scenario.validate();
    plant.validate();
    require_day_aligned(scenario);
    const auto periods = contract_periods(scenario, contract.period);

    SimulationReport report;
    report.meta = {"day2day", period_kind_name(contract.period), alpha,
                   config_hash(plant, contract, alpha)};

    double f4 = 0.0;  // cold plant before the first simulated day
    for (std::size_t ip = 0; ip < periods.size(); ++ip) {
        const auto [p_start, p_hours] = periods[ip];
        ContractState st;
        st.period_kind = contract.period;
        st.period_target_kg = contract.target_kg;
        st.produced_so_far_kg = 0.0;

        const std::size_t days = p_hours / 24;
        for (std::size_t d = 0; d < days; ++d) {
            const std::size_t day_start = p_start + 24 * d;
            st.remaining_hours_in_period = p_hours - 24 * d;
            st.day_index_in_period = static_cast<int>(d);

            double m_star;
            try {
                m_star = long_term_mass(scenario, st, plant, alpha, f4, day_start);
            } catch (const WindowInfeasible& e) {
                throw ContractBreach("period " + std::to_string(ip) + ", day " +
                                     std::to_string(day_start / 24) + ": " + e.what());
            }
            const DailyMassBounds bounds = feasible_daily_mass_bounds(plant, f4);
            const double m_hat = filter_mass(m_star, bounds);

            const std::size_t slice_len =
                std::min<std::size_t>(34, scenario.n_hours() - day_start);
            const ScenarioSlice planning_slice = window(scenario, day_start, slice_len);
            const DailyPlan plan = daily_plan(planning_slice, plant, f4, alpha, m_hat, st);

            const ScenarioSlice actual = window(scenario, day_start, 24);
            const DispatchResult executed = execute_day(plan, actual, plant, f4);

            for (double mass : executed.m) st.produced_so_far_kg += mass;
            f4 = executed.g4[23] / plant.electrolyser_mw;
            append_result(report.hourly, executed);
        }

        PeriodRecord rec{p_start, p_hours, contract.target_kg, st.produced_so_far_kg, false};
        rec.met = rec.produced_kg >= rec.target_kg - 1e-3;
        report.periods.push_back(rec);
        if (!rec.met)
            throw ContractBreach("period " + std::to_string(ip) + " ended " +
                                 std::to_string(rec.target_kg - rec.produced_kg) + " kg short");
    }

    const ScenarioSlice full = window(scenario, 0, scenario.n_hours());
    report.costs = cost_components(report.hourly, full, plant, alpha);
    report.total_h2_kg = report.hourly.total_h2_kg();
    report.f4_trajectory = report.hourly.f4;
    return report;
}

SimulationReport run_benchmark(const ScenarioData& scenario, const PlantConfig& plant,
                               const DeliveryContract& contract, double alpha) {
    scenario.validate();
    plant.validate();
    const auto periods = contract_periods(scenario, contract.period);

    PeriodTargets targets;
    for (const auto& [start, hours] : periods)
        targets.targets.push_back({start, hours, contract.target_kg});

    const ScenarioSlice full = window(scenario, 0, scenario.n_hours());
    auto [lp, vars] = build_dispatch(full, plant, 0.0, alpha, targets);
    LpSolution sol = solve(lp);
    if (sol.status != LpStatus::Optimal)
        throw WindowInfeasible("benchmark: delivery targets exceed plant capability");

    SimulationReport report;
    report.meta = {"benchmark", period_kind_name(contract.period), alpha,
                   config_hash(plant, contract, alpha)};
    report.hourly = extract_flows(sol, vars, full, plant);
    for (const auto& [start, hours] : periods) {
        PeriodRecord rec{start, hours, contract.target_kg, 0.0, false};
        for (std::size_t t = start; t < start + hours; ++t) rec.produced_kg += report.hourly.m[t];
        rec.met = rec.produced_kg >= rec.target_kg - 1e-3;
        report.periods.push_back(rec);
    }
    report.costs = cost_components(report.hourly, full, plant, alpha);
    report.total_h2_kg = report.hourly.total_h2_kg();
    report.f4_trajectory = report.hourly.f4;
    return report;
}

double run_trading_only(const ScenarioData& scenario, const PlantConfig& plant) {
    scenario.validate();
    plant.validate();
    const ScenarioSlice full = window(scenario, 0, scenario.n_hours());
    auto [lp, vars] = build_dispatch(full, plant, 0.0, 0.0,
                                     PlanFollow{std::vector<double>(scenario.n_hours(), 0.0)});
    LpSolution sol = solve(lp);
    if (sol.status != LpStatus::Optimal)
        throw Error("trading-only dispatch unexpectedly failed");
    DispatchResult flows = extract_flows(sol, vars, full, plant);
    CostBreakdown costs = cost_components(flows, full, plant, 0.0);
    return -costs.electricity_eur;
}

std::uint64_t config_hash(const PlantConfig& plant, const DeliveryContract& contract,
                          double alpha) {
    char buf[1024];
    std::snprintf(buf, sizeof(buf),
                  "%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|"
                  "%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%s|%.17g|%.17g",
                  plant.solar_mw, plant.wind_mw, plant.inverter_mw, plant.electrolyser_mw,
                  plant.grid_mw, plant.eta_inverter, plant.eta_lhv, plant.lhv_h2_mj_per_kg,
                  plant.ramp_up, plant.ramp_up_cold, plant.ramp_down,
                  plant.electrolyser_capex_eur_per_mw, plant.fixed_om_eur_per_mw_year,
                  plant.lifetime_years, plant.discount_rate, plant.op_cost_solar,
                  plant.op_cost_wind, plant.op_cost_inverter, plant.op_cost_electrolyser,
                  plant.op_cost_grid, plant.co2_price_eur_per_kg,
                  period_kind_name(contract.period), contract.target_kg, alpha);
    std::uint64_t h = 1469598103934665603ull;
    for (const char* p = buf; *p; ++p) {
        h ^= static_cast<unsigned char>(*p);
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_out(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw Error("cannot write " + path);
    return File(f);
}

} // namespace

void write_hourly_csv(const SimulationReport& report, const ScenarioData& scenario,
                      const std::string& path) {
    File f = open_out(path);
    std::fputs(
        "hour,g1,g1c,g2,g2c,g3dc,g3ac,g4,gh2,g5i,g5e,m_kg,price_eur_mwh,co2_kg_mwh,"
        "import_mwh,export_mwh,co2_kg\n",
        f.get());
    const DispatchResult& r = report.hourly;
    for (std::size_t t = 0; t < r.n_hours(); ++t) {
        std::fprintf(f.get(),
                     "%zu,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,"
                     "%.10g,%.10g,%.10g,%.10g,%.10g\n",
                     t, r.g1[t], r.g1c[t], r.g2[t], r.g2c[t], r.g3dc[t], r.g3ac[t], r.g4[t],
                     r.gh2[t], r.g5i[t], r.g5e[t], r.m[t], scenario.price[t],
                     scenario.co2_intensity[t], r.g5i[t], r.g5e[t],
                     r.g5i[t] * scenario.co2_intensity[t]);
    }
}

void write_summary_csv(const SimulationReport& report, const std::string& path) {
    File f = open_out(path);
    std::fputs(
        "mode,delivery,alpha,config_hash,hours,total_h2_kg,electricity_eur,operation_eur,"
        "co2_cost_eur,co2_kg,capital_eur,weighted_eur,periods_met,periods_total\n",
        f.get());
    std::size_t met = 0;
    for (const PeriodRecord& p : report.periods) met += p.met ? 1u : 0u;
    std::fprintf(f.get(), "%s,%s,%.10g,%016llx,%zu,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%zu,%zu\n",
                 report.meta.mode.c_str(), report.meta.delivery.c_str(), report.meta.alpha,
                 static_cast<unsigned long long>(report.meta.config_hash),
                 report.hourly.n_hours(), report.total_h2_kg, report.costs.electricity_eur,
                 report.costs.operation_eur, report.costs.co2_cost_eur, report.costs.co2_kg,
                 report.costs.capital_eur, report.costs.weighted_eur, met,
                 report.periods.size());
}

void write_periods_csv(const SimulationReport& report, const std::string& path) {
    File f = open_out(path);
    std::fputs("period,start_hour,hours,target_kg,produced_kg,met\n", f.get());
    for (std::size_t i = 0; i < report.periods.size(); ++i) {
        const PeriodRecord& p = report.periods[i];
        std::fprintf(f.get(), "%zu,%zu,%zu,%.10g,%.10g,%d\n", i, p.start_hour, p.n_hours,
                     p.target_kg, p.produced_kg, p.met ? 1 : 0);
    }
}

} // namespace h2plan
