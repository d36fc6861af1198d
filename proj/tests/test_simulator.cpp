#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "h2plan/errors.hpp"
#include "h2plan/simulator.hpp"
#include "support/dispatch_oracles.hpp"
#include "support/synthetic.hpp"

using namespace h2plan;

TEST_CASE("contract periods tile the horizon") {
    ScenarioData s = test::synthetic_scenario(14, 1);

    auto daily = contract_periods(s, PeriodKind::Day);
    CHECK(daily.size() == 14);
    auto weekly = contract_periods(s, PeriodKind::Week);
    CHECK(weekly.size() == 2);
    CHECK(weekly[1].first == 168);
    auto yearly = contract_periods(s, PeriodKind::Year);
    CHECK(yearly.size() == 1);
    CHECK(yearly[0].second == 14 * 24);

    // 14 days is not a whole number of months.
    CHECK_THROWS_AS(contract_periods(s, PeriodKind::Month), ConfigError);

    ScenarioData feb = test::synthetic_scenario(31 + 28, 2);  // Jan + Feb 2018
    auto monthly = contract_periods(feb, PeriodKind::Month);
    CHECK(monthly.size() == 2);
    CHECK(monthly[0].second == 31 * 24);
    CHECK(monthly[1].second == 28 * 24);
}

TEST_CASE("day-to-day meets daily contracts exactly") {
    PlantConfig plant;
    ScenarioData s = test::synthetic_scenario(7, 40);
    SimulationReport rep = run_day_to_day(s, plant, {PeriodKind::Day, 296.0}, 0.0);
    REQUIRE(rep.periods.size() == 7);
    for (const PeriodRecord& p : rep.periods) {
        CHECK(p.met);
        CHECK(std::fabs(p.produced_kg - 296.0) <= 1e-3);
    }
    CHECK(rep.total_h2_kg == doctest::Approx(7 * 296.0));
    // Ramp audit, independent of the LP.
    CHECK(test::count_ramp_violations(rep.hourly.g4, plant, 0.0) == 0);
}

TEST_CASE("zero-target contract is a no-op plant") {
    PlantConfig plant;
    ScenarioData s = test::synthetic_scenario(3, 41);
    for (std::size_t t = 0; t < s.n_hours(); ++t) {
        s.cf_solar[t] = 0.0;
        s.cf_wind[t] = 0.0;
        s.price[t] = 35.0;
    }
    SimulationReport rep = run_day_to_day(s, plant, {PeriodKind::Day, 0.0}, 0.0);
    CHECK(rep.total_h2_kg == doctest::Approx(0.0));
    CHECK(rep.costs.electricity_eur == doctest::Approx(0.0));
    CHECK(rep.costs.co2_kg == doctest::Approx(0.0));
}

TEST_CASE("alpha reduces day-to-day emissions") {
    PlantConfig plant;
    ScenarioData s = test::synthetic_scenario(14, 42);
    SimulationReport low = run_day_to_day(s, plant, {PeriodKind::Week, 2071.0}, 0.0);
    SimulationReport high = run_day_to_day(s, plant, {PeriodKind::Week, 2071.0}, 1.0);
    CHECK(high.costs.co2_kg <= low.costs.co2_kg + 1e-6);
    for (const PeriodRecord& p : low.periods) CHECK(p.met);
    for (const PeriodRecord& p : high.periods) CHECK(p.met);
}

TEST_CASE("benchmark relaxation bounds day-to-day from below") {
    PlantConfig plant;
    ScenarioData s = test::synthetic_scenario(7, 43);
    for (double alpha : {0.0, 0.5, 1.0}) {
        SimulationReport bench = run_benchmark(s, plant, {PeriodKind::Day, 296.0}, alpha);
        SimulationReport d2d = run_day_to_day(s, plant, {PeriodKind::Day, 296.0}, alpha);
        CHECK(bench.costs.weighted_eur <= d2d.costs.weighted_eur + 1e-6);
        for (const PeriodRecord& p : bench.periods) CHECK(p.met);
    }
}

TEST_CASE("benchmark feasibility follows the mass envelope") {
    PlantConfig plant;
    ScenarioData s = test::synthetic_scenario(2, 44);
    // 2 days cannot produce 1000 kg (2 x 432 minus the cold first hour).
    CHECK_THROWS_AS(run_benchmark(s, plant, {PeriodKind::Year, 1000.0}, 0.0), WindowInfeasible);
    SimulationReport ok = run_benchmark(s, plant, {PeriodKind::Year, 850.0}, 0.0);
    CHECK(ok.periods[0].met);
}

TEST_CASE("yearly benchmark with 6000 full-load-hours of demand is feasible") {
    PlantConfig plant;
    ScenarioData s = test::synthetic_scenario(365, 45);
    SimulationReport rep = run_benchmark(s, plant, {PeriodKind::Year, 108000.0}, 0.3);
    REQUIRE(rep.periods.size() == 1);
    CHECK(rep.periods[0].met);
    CHECK(rep.total_h2_kg >= 108000.0 - 1e-2);
    CHECK(test::count_ramp_violations(rep.hourly.g4, plant, 0.0) == 0);
}

TEST_CASE("trading-only profit") {
    PlantConfig plant;

    SUBCASE("flat prices and no renewables leave nothing to trade") {
        ScenarioData s = test::synthetic_scenario(2, 46);
        for (std::size_t t = 0; t < s.n_hours(); ++t) {
            s.cf_solar[t] = 0.0;
            s.cf_wind[t] = 0.0;
            s.price[t] = 42.0;
        }
        CHECK(run_trading_only(s, plant) == doctest::Approx(0.0));
    }

    SUBCASE("wind exports sell at the spot price") {
        ScenarioData s = test::synthetic_scenario(2, 47);
        for (std::size_t t = 0; t < s.n_hours(); ++t) {
            s.cf_solar[t] = 0.0;
            s.cf_wind[t] = t < 10 ? 1.0 : 0.0;
            s.price[t] = 50.0;
        }
        CHECK(run_trading_only(s, plant) == doctest::Approx(500.0));
    }

    SUBCASE("solar exports pay the inverter toll") {
        ScenarioData s = test::synthetic_scenario(2, 48);
        for (std::size_t t = 0; t < s.n_hours(); ++t) {
            s.cf_solar[t] = t == 12 ? 1.0 : 0.0;
            s.cf_wind[t] = 0.0;
            s.price[t] = 100.0;
        }
        CHECK(run_trading_only(s, plant) == doctest::Approx(90.0));
    }
}

TEST_CASE("execution reproduces the planner's expectation under perfect forecast") {
    PlantConfig plant;
    ScenarioData s = test::synthetic_scenario(3, 49);
    ContractState st{PeriodKind::Day, 296.0, 0.0, 24, 0};
    const double alpha = 0.4;

    const ScenarioSlice slice = window(s, 0, 34);
    DailyMassBounds b = feasible_daily_mass_bounds(plant, 0.0);
    const double m_hat = filter_mass(296.0, b);
    DailyPlan plan = daily_plan(slice, plant, 0.0, alpha, m_hat, st);

    const ScenarioSlice actual = window(s, 0, 24);
    DispatchResult exec = execute_day(plan, actual, plant, 0.0);
    for (std::size_t t = 0; t < 24; ++t) {
        CHECK(std::fabs(exec.m[t] - plan.committed_kg[t]) <= 1e-6);
        CHECK(std::fabs(exec.g4[t] - plan.expected.g4[t]) <= 1e-6);
        CHECK(std::fabs(exec.g5i[t] - plan.expected.g5i[t]) <= 1e-6);
        CHECK(std::fabs(exec.g5e[t] - plan.expected.g5e[t]) <= 1e-6);
    }

    SUBCASE("all-zero plan exports the renewables") {
        DailyPlan zero;
        zero.committed_kg.assign(24, 0.0);
        DispatchResult flows = execute_day(zero, actual, plant, 0.0);
        for (std::size_t t = 0; t < 24; ++t) CHECK(flows.g4[t] == doctest::Approx(0.0));
    }

    SUBCASE("full plan with no renewables imports at nameplate") {
        ScenarioSlice flat = test::flat_slice(24, 50.0, 100.0);
        DailyPlan full;
        full.committed_kg.assign(24, 18.0);
        DispatchResult flows = execute_day(full, flat, plant, 1.0);
        for (std::size_t t = 0; t < 24; ++t) CHECK(flows.g5i[t] == doctest::Approx(1.0));
    }
}

TEST_CASE("determinism across repeated runs") {
    PlantConfig plant;
    ScenarioData s = test::synthetic_scenario(7, 50);
    SimulationReport a = run_day_to_day(s, plant, {PeriodKind::Week, 2071.0}, 0.5);
    SimulationReport b = run_day_to_day(s, plant, {PeriodKind::Week, 2071.0}, 0.5);
    REQUIRE(a.hourly.n_hours() == b.hourly.n_hours());
    for (std::size_t t = 0; t < a.hourly.n_hours(); ++t) {
        CHECK(a.hourly.g4[t] == b.hourly.g4[t]);
        CHECK(a.hourly.g5i[t] == b.hourly.g5i[t]);
        CHECK(a.hourly.m[t] == b.hourly.m[t]);
    }
    CHECK(a.costs.weighted_eur == b.costs.weighted_eur);
    CHECK(a.meta.config_hash == b.meta.config_hash);
}

TEST_CASE("contract breach raises with the day index") {
    PlantConfig plant;
    ScenarioData s = test::synthetic_scenario(7, 51);
    CHECK_THROWS_AS(run_day_to_day(s, plant, {PeriodKind::Week, 50000.0}, 0.0), ContractBreach);
}
