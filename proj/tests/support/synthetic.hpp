#pragma once

// Deterministic synthetic scenarios for tests: diurnal solar, seeded noisy
// wind, and price/intensity patterns with enough structure to make the
// optimizations non-trivial.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "h2plan/timeseries.hpp"

namespace h2plan::test {

inline ScenarioData synthetic_scenario(std::size_t n_days, std::uint32_t seed,
                                       std::int64_t start_epoch_hour = 17532 * 24) {
    // Default start: 2018-01-01T00:00Z.
    ScenarioData s;
    s.start_epoch_hour = start_epoch_hour;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    const std::size_t n = n_days * 24;
    s.cf_solar.reserve(n);
    s.cf_wind.reserve(n);
    s.price.reserve(n);
    s.co2_intensity.reserve(n);

    double wind_state = 0.4;
    for (std::size_t t = 0; t < n; ++t) {
        const double hour = static_cast<double>(t % 24);
        const double day = static_cast<double>(t / 24);

        // Solar: daylight bell between 06:00 and 18:00, seasonal-ish drift.
        double solar = 0.0;
        if (hour >= 6.0 && hour <= 18.0) {
            const double x = (hour - 12.0) / 6.0;
            solar = (1.0 - x * x) * (0.55 + 0.25 * std::sin(0.05 * day + 1.0));
        }
        solar = std::min(1.0, std::max(0.0, solar));

        // Wind: mean-reverting random walk.
        wind_state += 0.25 * (0.45 - wind_state) + 0.22 * (u01(rng) - 0.5);
        wind_state = std::min(0.98, std::max(0.02, wind_state));

        // Price: morning/evening peaks plus noise, occasional negative dips.
        double price = 38.0 + 16.0 * std::sin((hour - 8.0) * 2.0 * 3.14159265358979 / 24.0) +
                       9.0 * std::sin(0.35 * day) + 12.0 * (u01(rng) - 0.5);
        if (u01(rng) < 0.02) price = -5.0 - 10.0 * u01(rng);

        // Intensity: anti-correlated with wind, always nonnegative.
        double intensity = 260.0 * (1.0 - 0.75 * wind_state) + 40.0 * (u01(rng) - 0.5);
        intensity = std::max(0.0, intensity);

        s.cf_solar.push_back(solar);
        s.cf_wind.push_back(wind_state);
        s.price.push_back(price);
        s.co2_intensity.push_back(intensity);
    }
    s.validate();
    return s;
}

/// Scenario with no renewables at all; prices and intensities as given.
inline ScenarioSlice flat_slice(std::size_t hours, double price, double intensity,
                                double cf_solar = 0.0, double cf_wind = 0.0) {
    ScenarioSlice s;
    s.offset = ScenarioSlice::kSyntheticOrigin;
    s.cf_solar.assign(hours, cf_solar);
    s.cf_wind.assign(hours, cf_wind);
    s.price.assign(hours, price);
    s.co2_intensity.assign(hours, intensity);
    return s;
}

inline void write_scenario_csv(const ScenarioData& s, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("timestamp,cf_solar,cf_wind,price_eur_mwh,co2_kg_mwh\n", f);
    for (std::size_t t = 0; t < s.n_hours(); ++t) {
        const std::string ts = format_iso8601_hour(s.start_epoch_hour + static_cast<std::int64_t>(t));
        std::fprintf(f, "%s,%.6f,%.6f,%.4f,%.4f\n", ts.c_str(), s.cf_solar[t], s.cf_wind[t],
                     s.price[t], s.co2_intensity[t]);
    }
    std::fclose(f);
}

} // namespace h2plan::test
