#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "h2plan/lp.hpp"
#include "h2plan/timeseries.hpp"

namespace h2plan {

/// Plant capacities, efficiencies and cost parameters. Defaults mirror the
/// 1 MW reference configuration; discount rate, fixed O&M, per-unit operation
/// costs and the CO2 price are artifact defaults, not data.
struct PlantConfig {
    double solar_mw = 1.0;        // G1
    double wind_mw = 1.0;         // G2
    double inverter_mw = 1.0;     // G3
    double electrolyser_mw = 1.0; // G4
    double grid_mw = 1.0;         // G5

    double eta_inverter = 0.9;
    double eta_lhv = 0.6;              // constant electrolyser efficiency
    double lhv_h2_mj_per_kg = 120.0;

    double ramp_up = 1.0;       // rru, fraction of G4 per hour
    double ramp_up_cold = 0.5;  // rruc
    double ramp_down = 1.0;     // rrd

    double electrolyser_capex_eur_per_mw = 700000.0;
    double fixed_om_eur_per_mw_year = 0.0;
    double lifetime_years = 10.0;
    double discount_rate = 0.07;

    // Operation cost per MWh of flow, by technology.
    double op_cost_solar = 0.0;
    double op_cost_wind = 0.0;
    double op_cost_inverter = 0.0;
    double op_cost_electrolyser = 0.0;
    double op_cost_grid = 0.0;

    double co2_price_eur_per_kg = 1.0;
    double delta_t_hours = 1.0;

    void validate() const;

    // kg of hydrogen per MWh of electrolyser input (18 at the defaults).
    double h2_kg_per_mwh() const { return 3600.0 * eta_lhv / lhv_h2_mj_per_kg; }
    // kg produced in one hour at full load.
    double full_load_kg_per_hour() const {
        return h2_kg_per_mwh() * electrolyser_mw * delta_t_hours;
    }
    // Annualised capital of the electrolyser: c_f + c_i * d / (1 - (1+d)^-L),
    // per MW, times the capacity.
    double electrolyser_annualised_capital_eur() const;
};

/// Hourly flows of a solved dispatch. All power values in MW, masses in kg.
struct DispatchResult {
    std::vector<double> g1, g1c;    // solar to DC bus, curtailed solar
    std::vector<double> g2, g2c;    // wind to AC bus, curtailed wind
    std::vector<double> g3dc, g3ac; // inverter DC / AC side
    std::vector<double> g4;         // electrolyser input
    std::vector<double> gh2;        // hydrogen power
    std::vector<double> g5i, g5e;   // grid import / export
    std::vector<double> m;          // hydrogen mass per hour
    std::vector<double> f4;         // g4 / G4

    std::size_t n_hours() const { return g4.size(); }
    double total_h2_kg() const;
};

struct CostBreakdown {
    double electricity_eur = 0.0; // net of export revenue
    double operation_eur = 0.0;
    double co2_cost_eur = 0.0;
    double co2_kg = 0.0;          // import-attributed emissions only
    double capital_eur = 0.0;     // horizon-prorated, excluded from the LP
    double weighted_eur = 0.0;    // alpha * co2_cost + (1-alpha) * (elec + op)
};

// --- hydrogen mass constraint flavours ---

/// Fix each hour's mass to a committed plan.
struct PlanFollow {
    std::vector<double> hourly_kg;
};
/// Fix the day total (hours 0-23) plus an advisory total for hours 24-33.
/// Without an advisory value the tail hours stay unconstrained.
struct DailySum {
    double committed_kg = 0.0;
    std::optional<double> advisory_kg;
};
/// Constrain the mass over the whole horizon.
struct WindowTotal {
    double total_kg = 0.0;
    Sense sense = Sense::Equal; // Equal or GreaterEqual
};
/// One minimum-mass constraint per delivery period.
struct PeriodTarget {
    std::size_t start_hour = 0;
    std::size_t n_hours = 0;
    double mass_kg = 0.0;
};
struct PeriodTargets {
    std::vector<PeriodTarget> targets;
};

using MassConstraintSpec = std::variant<PlanFollow, DailySum, WindowTotal, PeriodTargets>;

/// Variable ids of the built problem, one per hour and flow.
struct DispatchVariables {
    std::vector<int> g1, g1c, g2, g2c, g3dc, g3ac, g4, gh2, g5i, g5e, m;
    std::size_t horizon() const { return g4.size(); }
};

/// Encodes the plant over the slice as an LP: bus balances, curtailment,
/// inverter and electrolyser couplings, grid limits, ramping against f4_init,
/// the hydrogen mass definition, the requested mass constraints, and the
/// weighted cost/emissions objective.
std::pair<LpProblem, DispatchVariables> build_dispatch(const ScenarioSlice& slice,
                                                       const PlantConfig& plant,
                                                       double f4_init, double alpha,
                                                       const MassConstraintSpec& mass_spec);

/// Decodes an Optimal solution and re-verifies every balance; throws
/// NotOptimal / InternalConsistency.
DispatchResult extract_flows(const LpSolution& solution, const DispatchVariables& vars,
                             const ScenarioSlice& slice, const PlantConfig& plant);

CostBreakdown cost_components(const DispatchResult& result, const ScenarioSlice& slice,
                              const PlantConfig& plant, double alpha);

// --- electrolyser efficiency linearization ---

struct EfficiencyPoint {
    double capacity_factor; // f in (0, 1]
    double efficiency;      // eta at that load
};

struct EfficiencyFit {
    double slope = 0.0;      // OLS fit of f*eta against f
    double intercept = 0.0;
    double slope_p_value = 1.0;
    double intercept_p_value = 1.0;
    double zero_intercept_slope = 0.0;
};

/// Least-squares fit of f*eta on f, with coefficient p-values and the
/// zero-intercept refit slope. Throws DegenerateInput when all capacity
/// factors coincide.
EfficiencyFit linearize_efficiency(const std::vector<EfficiencyPoint>& curve);

} // namespace h2plan
