#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

namespace h2plan {

/// Validated hourly scenario: solar/wind capacity factors, spot price and
/// grid CO2 intensity on a common, gap-free hourly axis.
struct ScenarioData {
    std::int64_t start_epoch_hour = 0;  // hours since 1970-01-01T00:00Z
    std::vector<double> cf_solar;       // [0,1] per hour
    std::vector<double> cf_wind;        // [0,1] per hour
    std::vector<double> price;          // EUR/MWh, may be negative
    std::vector<double> co2_intensity;  // kg CO2/MWh, >= 0

    std::size_t n_hours() const { return price.size(); }

    // Throws if the series are inconsistent or out of range.
    void validate() const;
};

/// Read-only excerpt of a scenario. `offset` is the hour index into the
/// parent scenario, or kSyntheticOrigin when the slice was assembled from
/// non-contiguous pieces (planning windows).
struct ScenarioSlice {
    static constexpr std::int64_t kSyntheticOrigin = -1;

    std::int64_t offset = kSyntheticOrigin;
    std::vector<double> cf_solar;
    std::vector<double> cf_wind;
    std::vector<double> price;
    std::vector<double> co2_intensity;

    std::size_t n_hours() const { return price.size(); }
};

/// Load a scenario from CSV (gzip accepted when the path ends in ".gz").
/// Expected header: timestamp,cf_solar,cf_wind,price_eur_mwh,co2_kg_mwh
/// with strictly increasing hourly ISO-8601 UTC timestamps.
ScenarioData load_scenario(const std::string& path);

/// Contiguous view of hours [start, start+length).
ScenarioSlice window(const ScenarioData& scenario, std::size_t start, std::size_t length);

/// Planning window for the shrinking-horizon planner: the true data for the
/// first min(forecast_horizon, remaining_hours) hours starting at
/// next_day_start, then whole historical days (midnight-aligned, in calendar
/// order) from just before next_day_start, truncated at the tail so the
/// window is exactly remaining_hours long.
///
/// Throws InsufficientHistory when fewer historical hours exist than the
/// construction requires; callers fall back to a shorter window and scale
/// their mass target.
ScenarioSlice build_planning_window(const ScenarioData& scenario,
                                    std::size_t next_day_start,
                                    std::size_t remaining_hours,
                                    std::size_t forecast_horizon = 34);

// Calendar helpers for period bookkeeping (proleptic Gregorian, UTC).
struct CivilDate {
    int year;
    unsigned month;  // 1..12
    unsigned day;    // 1..31
};
std::int64_t days_from_civil(const CivilDate& d);
CivilDate civil_from_days(std::int64_t days_since_epoch);

/// Parse "YYYY-MM-DDTHH:MM[:SS][Z]" (a space also accepted as the date/time
/// separator) into whole hours since the epoch. Throws NonHourlyStep when
/// minutes/seconds are nonzero, Error on malformed input.
std::int64_t parse_iso8601_hour(const std::string& text);

/// Inverse of parse_iso8601_hour, always "YYYY-MM-DDTHH:00:00Z".
std::string format_iso8601_hour(std::int64_t epoch_hour);

} // namespace h2plan
