#pragma once

#include <cstddef>
#include <vector>

#include "h2plan/dispatch.hpp"
#include "h2plan/timeseries.hpp"

namespace h2plan {

enum class PeriodKind { Day, Week, Month, Year };

/// Progress through the current delivery period, as seen when planning the
/// next day. remaining_hours_in_period counts from that day's first hour to
/// the period's end.
struct ContractState {
    PeriodKind period_kind = PeriodKind::Day;
    double period_target_kg = 296.0;
    double produced_so_far_kg = 0.0;
    std::size_t remaining_hours_in_period = 24;
    int day_index_in_period = 0;

    double remaining_target_kg() const;
    void validate() const;
};

struct DailyMassBounds {
    double min_kg = 0.0;
    double max_kg = 0.0;
};

/// Ramp-feasible production envelope for one day from the given initial
/// electrolyser state, via two auxiliary dispatch LPs with full grid support
/// and no renewables required.
DailyMassBounds feasible_daily_mass_bounds(const PlantConfig& plant, double f4_init);

/// Clamp of the long-term request into the feasible envelope.
double filter_mass(double m_star_kg, const DailyMassBounds& bounds);

/// Shrinking-window long-term planner: optimizes the remaining period over a
/// window of short-term data plus re-indexed historical days, constrained to
/// the remaining mass target, and commits the first day's total.
///
/// Day contracts and the final planning day return the remaining target
/// directly. When history is too short (early in the dataset) the window
/// shrinks to the data available and the target scales with it.
///
/// Throws WindowInfeasible when the remaining target exceeds what the window
/// can produce -- the signal of an impending contract breach.
double long_term_mass(const ScenarioData& scenario, const ContractState& state,
                      const PlantConfig& plant, double alpha, double f4_init,
                      std::size_t next_day_start);

/// Next-day commitment plus the advisory morning tail.
struct DailyPlan {
    std::vector<double> committed_kg;  // one entry per hour of the next day
    std::vector<double> advisory_kg;   // up to 10 hours of the following morning
    double f4_end = 0.0;               // electrolyser state handed to the next day
    DispatchResult expected;           // planner's expected flows over the slice
};

/// 34-hour daily planner: allocates m_hat_kg over the committed day exactly,
/// plus a tail allocation that keeps the electrolyser positioned for the
/// following morning.
DailyPlan daily_plan(const ScenarioSlice& slice34, const PlantConfig& plant, double f4_init,
                     double alpha, double m_hat_kg, const ContractState& state);

} // namespace h2plan
