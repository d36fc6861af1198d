#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "h2plan/errors.hpp"
#include "h2plan/metrics.hpp"
#include "support/synthetic.hpp"

using namespace h2plan;

namespace {

// Minimal hand-built report: n hours of given flows, costs filled in by hand.
SimulationReport make_report(std::size_t hours, double g4, double g5i, double g5e, double m) {
    SimulationReport rep;
    rep.hourly.g1.assign(hours, 0.0);
    rep.hourly.g1c.assign(hours, 0.0);
    rep.hourly.g2.assign(hours, 0.0);
    rep.hourly.g2c.assign(hours, 0.0);
    rep.hourly.g3dc.assign(hours, 0.0);
    rep.hourly.g3ac.assign(hours, 0.0);
    rep.hourly.g4.assign(hours, g4);
    rep.hourly.gh2.assign(hours, g4 * 0.6);
    rep.hourly.g5i.assign(hours, g5i);
    rep.hourly.g5e.assign(hours, g5e);
    rep.hourly.m.assign(hours, m);
    rep.hourly.f4.assign(hours, g4);
    rep.total_h2_kg = m * static_cast<double>(hours);
    return rep;
}

ScenarioData flat_scenario(std::size_t hours, double price, double intensity) {
    ScenarioData s;
    s.start_epoch_hour = 17532 * 24;
    s.cf_solar.assign(hours, 0.0);
    s.cf_wind.assign(hours, 0.0);
    s.price.assign(hours, price);
    s.co2_intensity.assign(hours, intensity);
    return s;
}

} // namespace

TEST_CASE("levelised cost arithmetic") {
    PlantConfig plant;

    SUBCASE("zero-cost world") {
        SimulationReport rep = make_report(24, 1.0, 0.0, 0.0, 18.0);
        rep.costs = CostBreakdown{};
        CHECK(levelised_cost(rep, 0.0, plant) == doctest::Approx(0.0));
    }

    SUBCASE("reference arithmetic") {
        SimulationReport rep;
        rep.total_h2_kg = 108000.0;
        rep.costs.capital_eur = 99662.0;
        rep.costs.operation_eur = 0.0;
        rep.costs.electricity_eur = 10000.0;
        CHECK(levelised_cost(rep, 20000.0, plant) ==
              doctest::Approx(129662.0 / 108000.0).epsilon(1e-12));
    }

    SUBCASE("doubling production halves the cost") {
        SimulationReport rep;
        rep.total_h2_kg = 1000.0;
        rep.costs.capital_eur = 5000.0;
        const double once = levelised_cost(rep, 0.0, plant);
        rep.total_h2_kg = 2000.0;
        CHECK(levelised_cost(rep, 0.0, plant) == doctest::Approx(once / 2.0));
    }

    SUBCASE("zero production is an error") {
        SimulationReport rep;
        rep.total_h2_kg = 0.0;
        CHECK_THROWS_AS(levelised_cost(rep, 0.0, plant), ZeroProduction);
    }
}

TEST_CASE("specific emissions") {
    SimulationReport rep;
    rep.total_h2_kg = 108000.0;
    rep.costs.co2_kg = 0.0;
    CHECK(specific_emissions(rep) == doctest::Approx(0.0));
    rep.costs.co2_kg = 108000.0;
    CHECK(specific_emissions(rep) == doctest::Approx(1.0));
    // All-grid production at 120 kg/MWh and eta 0.6: one MWh in, 18 kg out.
    rep.total_h2_kg = 18.0;
    rep.costs.co2_kg = 120.0;
    CHECK(specific_emissions(rep) == doctest::Approx(120.0 / 18.0));
    rep.total_h2_kg = 0.0;
    CHECK_THROWS_AS(specific_emissions(rep), ZeroProduction);
}

TEST_CASE("green classification rules") {
    GreenRules rules;

    SUBCASE("onsite hour is green regardless of price") {
        SimulationReport rep = make_report(24, 1.0, 0.0, 0.0, 18.0);
        ScenarioData s = flat_scenario(24, 200.0, 500.0);
        GreenBreakdown g = classify_green(rep, s, rules);
        CHECK(g.h2_onsite_green_kg == doctest::Approx(24 * 18.0));
        CHECK(g.h2_nongreen_kg == doctest::Approx(0.0));
    }

    SUBCASE("cheap grid hour is green under the price rule") {
        SimulationReport rep = make_report(24, 1.0, 1.0, 0.0, 18.0);
        ScenarioData s = flat_scenario(24, 19.9, 500.0);
        GreenBreakdown g = classify_green(rep, s, rules);
        CHECK(g.h2_grid_green_kg == doctest::Approx(24 * 18.0));
        CHECK(g.h2_onsite_green_kg == doctest::Approx(0.0));
        CHECK(g.h2_nongreen_kg == doctest::Approx(0.0));
    }

    SUBCASE("thresholds are strict") {
        SimulationReport rep = make_report(24, 1.0, 1.0, 0.0, 18.0);
        ScenarioData s = flat_scenario(24, 20.0, 64.8);  // both exactly at the limit
        GreenBreakdown off = classify_green(rep, s, rules);
        CHECK(off.h2_grid_green_kg == doctest::Approx(0.0));
        CHECK(off.h2_nongreen_kg == doctest::Approx(24 * 18.0));

        GreenRules hourly = rules;
        hourly.hourly_intensity_mode = true;
        GreenBreakdown on = classify_green(rep, s, hourly);
        CHECK(on.h2_grid_green_hourly_kg == doctest::Approx(0.0));  // 64.8 is not < 64.8
        CHECK(on.h2_nongreen_kg == doctest::Approx(24 * 18.0));
    }

    SUBCASE("hourly rule rescues a low-intensity expensive hour") {
        SimulationReport rep = make_report(24, 1.0, 1.0, 0.0, 18.0);
        ScenarioData s = flat_scenario(24, 20.0, 60.0);
        GreenRules hourly = rules;
        hourly.hourly_intensity_mode = true;
        GreenBreakdown g = classify_green(rep, s, hourly);
        CHECK(g.h2_grid_green_hourly_kg == doctest::Approx(24 * 18.0));
        CHECK(g.h2_grid_green_kg == doctest::Approx(0.0));  // fails the price rule
        CHECK(g.h2_nongreen_kg == doctest::Approx(0.0));

        GreenBreakdown annual = classify_green(rep, s, rules);
        CHECK(annual.h2_nongreen_kg == doctest::Approx(24 * 18.0));
    }

    SUBCASE("mixed sourcing splits pro-rata and conserves mass") {
        // Half the electrolyser feed from the grid: 0.5 MWh import, 1 MWh in.
        SimulationReport rep = make_report(24, 1.0, 0.5, 0.0, 18.0);
        ScenarioData s = flat_scenario(24, 50.0, 200.0);
        GreenBreakdown g = classify_green(rep, s, rules);
        CHECK(g.h2_onsite_green_kg == doctest::Approx(12 * 18.0));
        CHECK(g.h2_nongreen_kg == doctest::Approx(12 * 18.0));
        CHECK(g.h2_onsite_green_kg + g.h2_grid_green_kg + g.h2_grid_green_hourly_kg +
                  g.h2_nongreen_kg ==
              doctest::Approx(rep.total_h2_kg).epsilon(1e-9));
        // Non-green specific emissions: 0.5 MWh x 200 kg/MWh over 9 kg.
        CHECK(g.specific_co2_nongreen == doctest::Approx(100.0 / 9.0));
    }

    SUBCASE("scaling all flows leaves the shares unchanged") {
        ScenarioData s = test::synthetic_scenario(3, 7);
        SimulationReport rep = make_report(72, 0.8, 0.3, 0.1, 14.4);
        GreenBreakdown a = classify_green(rep, s, rules);
        SimulationReport scaled = rep;
        for (auto* v : {&scaled.hourly.g4, &scaled.hourly.g5i, &scaled.hourly.g5e,
                        &scaled.hourly.m, &scaled.hourly.gh2})
            for (double& x : *v) x *= 3.0;
        scaled.total_h2_kg *= 3.0;
        GreenBreakdown b = classify_green(scaled, s, rules);
        CHECK(b.h2_onsite_green_kg == doctest::Approx(3.0 * a.h2_onsite_green_kg));
        CHECK(b.h2_nongreen_kg == doctest::Approx(3.0 * a.h2_nongreen_kg));
        CHECK(b.specific_co2_nongreen == doctest::Approx(a.specific_co2_nongreen));
    }
}

TEST_CASE("pareto sweep") {
    PlantConfig plant;
    ScenarioData s = test::synthetic_scenario(7, 99);
    DeliveryContract contract{PeriodKind::Day, 296.0};

    SUBCASE("benchmark endpoints order emissions") {
        auto pts = pareto_sweep(s, plant, contract, {0.0, 1.0}, RunMode::Benchmark, 2);
        REQUIRE(pts.size() == 2);
        CHECK(pts[1].specific_co2 <= pts[0].specific_co2 + 1e-9);
    }

    SUBCASE("single point equals an individual run") {
        auto pts = pareto_sweep(s, plant, contract, {0.5}, RunMode::DayToDay, 1);
        SimulationReport rep = run_day_to_day(s, plant, contract, 0.5);
        const double trading = run_trading_only(s, plant);
        REQUIRE(pts.size() == 1);
        CHECK(pts[0].lcoh_eur_per_kg == doctest::Approx(levelised_cost(rep, trading, plant)));
        CHECK(pts[0].specific_co2 == doctest::Approx(specific_emissions(rep)));
    }

    SUBCASE("benchmark frontier is monotone along a denser grid") {
        auto pts = pareto_sweep(s, plant, contract, {0.0, 0.25, 0.5, 0.75, 1.0},
                                RunMode::Benchmark, 0);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            CHECK(pts[i].specific_co2 <= pts[i - 1].specific_co2 + 1e-9);
            CHECK(pts[i].electricity_eur >= pts[i - 1].electricity_eur - 1e-6);
        }
    }
}

TEST_CASE("normalized comparison") {
    std::vector<ParetoPoint> a(3), b(3);
    for (int i = 0; i < 3; ++i) {
        a[static_cast<std::size_t>(i)].alpha = b[static_cast<std::size_t>(i)].alpha = 0.5 * i;
        a[static_cast<std::size_t>(i)].lcoh_eur_per_kg = 2.0;
        a[static_cast<std::size_t>(i)].specific_co2 = 3.2;
        b[static_cast<std::size_t>(i)].lcoh_eur_per_kg = 2.0;
        b[static_cast<std::size_t>(i)].specific_co2 = 2.0;
    }
    auto ratios = normalized_comparison(a, b);
    REQUIRE(ratios.size() == 3);
    CHECK(ratios[0].lcoh_ratio == doctest::Approx(1.0));
    CHECK(ratios[0].co2_ratio == doctest::Approx(1.6));  // the "up to 60 % higher" regime

    auto self = normalized_comparison(a, a);
    for (const auto& p : self) {
        CHECK(p.lcoh_ratio == doctest::Approx(1.0));
        CHECK(p.co2_ratio == doctest::Approx(1.0));
    }

    b.pop_back();
    CHECK_THROWS_AS(normalized_comparison(a, b), MismatchedAlphas);
    b.push_back(ParetoPoint{});
    b.back().alpha = 0.9;
    CHECK_THROWS_AS(normalized_comparison(a, b), MismatchedAlphas);

    // Zero benchmark values come back flagged, not thrown.
    std::vector<ParetoPoint> z(1);
    z[0].alpha = a[0].alpha = 0.0;
    auto flagged = normalized_comparison({a[0]}, z);
    CHECK_FALSE(flagged[0].defined);
}

TEST_CASE("cumulative series") {
    SUBCASE("zero-flow report") {
        SimulationReport rep = make_report(48, 0.0, 0.0, 0.0, 0.0);
        ScenarioData s = flat_scenario(48, 30.0, 100.0);
        CumulativeSeries cs = cumulative_series(rep, s);
        REQUIRE(cs.h2_kg.size() == 2);
        CHECK(cs.h2_kg[1] == doctest::Approx(0.0));
        CHECK(cs.net_revenue_eur[1] == doctest::Approx(0.0));
    }

    SUBCASE("constant production accumulates linearly") {
        SimulationReport rep = make_report(72, 1.0, 1.0, 0.0, 18.0);
        ScenarioData s = flat_scenario(72, 30.0, 100.0);
        CumulativeSeries cs = cumulative_series(rep, s);
        REQUIRE(cs.h2_kg.size() == 3);
        CHECK(cs.h2_kg[0] == doctest::Approx(432.0));
        CHECK(cs.h2_kg[1] == doctest::Approx(864.0));
        CHECK(cs.h2_kg[2] == doctest::Approx(1296.0));
    }

    SUBCASE("export-only revenue is non-decreasing") {
        SimulationReport rep = make_report(72, 0.0, 0.0, 0.7, 0.0);
        ScenarioData s = flat_scenario(72, 45.0, 100.0);
        CumulativeSeries cs = cumulative_series(rep, s);
        double prev = 0.0;
        for (double v : cs.net_revenue_eur) {
            CHECK(v >= prev - 1e-9);
            prev = v;
        }
    }
}
