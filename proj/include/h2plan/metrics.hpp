#pragma once

#include <string>
#include <vector>

#include "h2plan/simulator.hpp"

namespace h2plan {

/// Numeric green-hydrogen rules. The default thresholds mirror the current
/// regulation (annual-average accounting); hourly_intensity_mode switches the
/// additional hourly CO2-intensity test on.
struct GreenRules {
    double price_threshold_eur_mwh = 20.0;
    double intensity_threshold_kg_mwh = 64.8;
    double re_share_threshold = 0.90;
    bool hourly_intensity_mode = false;

    void validate() const;
};

/// Hydrogen mass attributed per rule; the four mass buckets are disjoint and
/// sum to the total production.
struct GreenBreakdown {
    double h2_onsite_green_kg = 0.0;
    double h2_grid_green_kg = 0.0;         // price rule
    double h2_grid_green_hourly_kg = 0.0;  // hourly-intensity rule (hourly mode only)
    double h2_nongreen_kg = 0.0;
    double specific_co2_nongreen = 0.0;    // kg CO2 per kg of non-green H2
};

struct ParetoPoint {
    double alpha = 0.0;
    double lcoh_eur_per_kg = 0.0;
    double specific_co2 = 0.0;  // kg CO2 per kg H2
    double total_h2_kg = 0.0;
    double electricity_eur = 0.0;
    double co2_kg = 0.0;
};

/// Levelised cost of hydrogen: prorated electrolyser capital, operation and
/// net electricity cost, plus the forgone trading profit, per kg produced.
double levelised_cost(const SimulationReport& report, double trading_profit_eur,
                      const PlantConfig& plant);

/// Total import-attributed emissions per kg of hydrogen.
double specific_emissions(const SimulationReport& report);

/// Hourly pro-rata attribution of hydrogen to power sources, grid import
/// feeding the electrolyser first, then the numeric green rules per bucket.
GreenBreakdown classify_green(const SimulationReport& report, const ScenarioData& scenario,
                              const GreenRules& rules);

enum class RunMode { Benchmark, DayToDay };

/// One full run per alpha (sharing a single trading-only counterfactual),
/// points ordered by alpha. max_threads = 0 picks the hardware concurrency.
std::vector<ParetoPoint> pareto_sweep(const ScenarioData& scenario, const PlantConfig& plant,
                                      const DeliveryContract& contract,
                                      const std::vector<double>& alphas, RunMode mode,
                                      unsigned max_threads = 0);

struct NormalizedPoint {
    double alpha = 0.0;
    double lcoh_ratio = 0.0;
    double co2_ratio = 0.0;
    bool defined = true;  // false when a benchmark value is zero
};

/// Elementwise day-to-day / benchmark ratios at matching alphas.
std::vector<NormalizedPoint> normalized_comparison(const std::vector<ParetoPoint>& day2day,
                                                   const std::vector<ParetoPoint>& benchmark);

/// Daily prefix sums of production and of net electricity revenue (exports
/// positive, imports negative; capital and CO2 price excluded).
struct CumulativeSeries {
    std::vector<double> h2_kg;
    std::vector<double> net_revenue_eur;
};
CumulativeSeries cumulative_series(const SimulationReport& report, const ScenarioData& scenario);

void write_pareto_csv(const std::vector<ParetoPoint>& points, const std::string& path);
void write_green_csv(const GreenBreakdown& green, const std::string& path);
void write_cumulative_csv(const CumulativeSeries& series, const std::string& path);
/// Per-hour scatter data behind the production-distribution figures:
/// hour, price, intensity, grid share of the hour's hydrogen, green flag.
void write_green_scatter_csv(const SimulationReport& report, const ScenarioData& scenario,
                             const GreenRules& rules, const std::string& path);

} // namespace h2plan
