#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "h2plan/dispatch.hpp"
#include "h2plan/planner.hpp"
#include "h2plan/timeseries.hpp"

namespace h2plan {

struct DeliveryContract {
    PeriodKind period = PeriodKind::Day;
    double target_kg = 296.0;  // per delivery period
};

struct PeriodRecord {
    std::size_t start_hour = 0;
    std::size_t n_hours = 0;
    double target_kg = 0.0;
    double produced_kg = 0.0;
    bool met = false;
};

struct RunMetadata {
    std::string mode;
    std::string delivery;
    double alpha = 0.0;
    std::uint64_t config_hash = 0;
};

struct SimulationReport {
    DispatchResult hourly;  // concatenated over the full horizon
    std::vector<PeriodRecord> periods;
    CostBreakdown costs;
    double total_h2_kg = 0.0;
    std::vector<double> f4_trajectory;
    RunMetadata meta;
};

/// Delivery periods tiling the scenario as (start_hour, n_hours) pairs.
/// Throws ConfigError when the horizon is not a whole number of periods
/// (partial periods are rejected, not prorated).
std::vector<std::pair<std::size_t, std::size_t>> contract_periods(const ScenarioData& scenario,
                                                                  PeriodKind kind);

/// Day-to-day operation: every day the long-term planner proposes a mass,
/// the feasibility filter clamps it, the daily planner allocates it, and the
/// plant executes the committed plan against actual data.
/// Throws ContractBreach (with the day index) when a period cannot be met.
SimulationReport run_day_to_day(const ScenarioData& scenario, const PlantConfig& plant,
                                const DeliveryContract& contract, double alpha);

/// Full-foresight benchmark: one LP over the whole horizon with a minimum
/// mass constraint per delivery period and a cold start.
SimulationReport run_benchmark(const ScenarioData& scenario, const PlantConfig& plant,
                               const DeliveryContract& contract, double alpha);

/// Electricity-trading counterfactual: the electrolyser stays off and the
/// plant trades its renewables at alpha = 0. Returns the profit (-C_e).
double run_trading_only(const ScenarioData& scenario, const PlantConfig& plant);

/// Executes one committed day against actual data, re-optimising only the
/// remaining degrees of freedom (import/export/curtailment).
DispatchResult execute_day(const DailyPlan& plan, const ScenarioSlice& actual_day,
                           const PlantConfig& plant, double f4_init);

const char* period_kind_name(PeriodKind kind);
PeriodKind period_kind_from_name(const std::string& name);

/// FNV-1a over the canonical parameter rendering; stamped into reports.
std::uint64_t config_hash(const PlantConfig& plant, const DeliveryContract& contract,
                          double alpha);

void write_hourly_csv(const SimulationReport& report, const ScenarioData& scenario,
                      const std::string& path);
void write_summary_csv(const SimulationReport& report, const std::string& path);
void write_periods_csv(const SimulationReport& report, const std::string& path);

} // namespace h2plan
