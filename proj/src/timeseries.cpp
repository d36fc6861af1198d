#include "h2plan/timeseries.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <zlib.h>

#include "h2plan/errors.hpp"

namespace h2plan {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

// Reads all text lines from a plain or gzip-compressed file.
std::vector<std::string> read_lines(const std::string& path) {
    std::vector<std::string> lines;
    bool gz = path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
    if (gz) {
        gzFile f = gzopen(path.c_str(), "rb");
        if (!f) throw Error("cannot open " + path);
        std::string buf;
        char chunk[1 << 16];
        int n;
        while ((n = gzread(f, chunk, sizeof(chunk))) > 0) buf.append(chunk, static_cast<std::size_t>(n));
        bool bad = n < 0;
        gzclose(f);
        if (bad) throw Error("gzip read error in " + path);
        std::stringstream ss(buf);
        std::string line;
        while (std::getline(ss, line)) lines.push_back(line);
    } else {
        std::ifstream f(path);
        if (!f) throw Error("cannot open " + path);
        std::string line;
        while (std::getline(f, line)) lines.push_back(line);
    }
    return lines;
}

double parse_number(const std::string& text, std::size_t row, const std::string& col) {
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw Error("row " + std::to_string(row) + ": cannot parse " + col + " value '" + text + "'");
    }
}

} // namespace

// Howard Hinnant's proleptic Gregorian algorithms.
std::int64_t days_from_civil(const CivilDate& d) {
    std::int64_t y = d.year - (d.month <= 2 ? 1 : 0);
    std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    unsigned yoe = static_cast<unsigned>(y - era * 400);
    unsigned doy = (153 * (d.month + (d.month > 2 ? -3 : 9)) + 2) / 5 + d.day - 1;
    unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    unsigned doe = static_cast<unsigned>(z - era * 146097);
    unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    unsigned mp = (5 * doy + 2) / 153;
    unsigned d = doy - (153 * mp + 2) / 5 + 1;
    unsigned m = mp + (mp < 10 ? 3 : -9);
    return CivilDate{static_cast<int>(y + (m <= 2 ? 1 : 0)), m, d};
}

std::int64_t parse_iso8601_hour(const std::string& text) {
    // YYYY-MM-DD[T ]HH:MM[:SS][Z]
    const std::string t = trim(text);
    auto fail = [&]() -> std::int64_t { throw Error("malformed timestamp '" + t + "'"); };
    if (t.size() < 16) fail();
    auto digits = [&](std::size_t pos, std::size_t n) -> int {
        int v = 0;
        for (std::size_t i = pos; i < pos + n; ++i) {
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) fail();
            v = v * 10 + (t[i] - '0');
        }
        return v;
    };
    if (t[4] != '-' || t[7] != '-' || (t[10] != 'T' && t[10] != ' ') || t[13] != ':') fail();
    int year = digits(0, 4), month = digits(5, 2), day = digits(8, 2);
    int hour = digits(11, 2), minute = digits(14, 2), second = 0;
    std::size_t rest = 16;
    if (t.size() > 16 && t[16] == ':') {
        second = digits(17, 2);
        rest = 19;
    }
    if (rest < t.size() && !(rest + 1 == t.size() && t[rest] == 'Z')) fail();
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 || second > 59) fail();
    if (minute != 0 || second != 0)
        throw NonHourlyStep("timestamp '" + t + "' is not hour-aligned");
    CivilDate cd{year, static_cast<unsigned>(month), static_cast<unsigned>(day)};
    return days_from_civil(cd) * 24 + hour;
}

std::string format_iso8601_hour(std::int64_t epoch_hour) {
    std::int64_t days = epoch_hour >= 0 ? epoch_hour / 24 : (epoch_hour - 23) / 24;
    int hour = static_cast<int>(epoch_hour - days * 24);
    CivilDate d = civil_from_days(days);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:00:00Z", d.year, d.month, d.day, hour);
    return buf;
}

void ScenarioData::validate() const {
    std::size_t n = n_hours();
    if (n < 24) throw Error("scenario must span at least 24 hours, got " + std::to_string(n));
    if (cf_solar.size() != n || cf_wind.size() != n || co2_intensity.size() != n)
        throw Error("scenario series lengths differ");
    for (std::size_t t = 0; t < n; ++t) {
        if (!(cf_solar[t] >= 0.0 && cf_solar[t] <= 1.0))
            throw OutOfRangeCapacityFactor("row " + std::to_string(t) + ": cf_solar = " + std::to_string(cf_solar[t]));
        if (!(cf_wind[t] >= 0.0 && cf_wind[t] <= 1.0))
            throw OutOfRangeCapacityFactor("row " + std::to_string(t) + ": cf_wind = " + std::to_string(cf_wind[t]));
        if (!(co2_intensity[t] >= 0.0))
            throw NegativeIntensity("row " + std::to_string(t) + ": co2_kg_mwh = " + std::to_string(co2_intensity[t]));
        if (!(price[t] == price[t]))  // NaN guard; negative prices are legal
            throw Error("row " + std::to_string(t) + ": price is NaN");
    }
}

ScenarioData load_scenario(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw Error("empty scenario file " + path);

    static const char* kColumns[5] = {"timestamp", "cf_solar", "cf_wind", "price_eur_mwh", "co2_kg_mwh"};
    const std::vector<std::string> header = split_csv_line(lines[0]);
    for (int c = 0; c < 5; ++c) {
        if (static_cast<std::size_t>(c) >= header.size() || header[c] != kColumns[c])
            throw MissingColumn("expected column '" + std::string(kColumns[c]) + "' at position " +
                                std::to_string(c) + " in " + path);
    }

    ScenarioData data;
    std::int64_t prev_hour = 0;
    std::size_t row = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const std::vector<std::string> f = split_csv_line(lines[i]);
        if (f.size() < 5)
            throw MissingColumn("row " + std::to_string(row) + ": expected 5 fields, got " + std::to_string(f.size()));
        std::int64_t h = parse_iso8601_hour(f[0]);
        if (row == 0) {
            data.start_epoch_hour = h;
        } else if (h != prev_hour + 1) {
            throw NonHourlyStep("row " + std::to_string(row) + ": timestamp " + f[0] +
                                " does not follow the previous hour");
        }
        prev_hour = h;

        double cfs = parse_number(f[1], row, "cf_solar");
        double cfw = parse_number(f[2], row, "cf_wind");
        double p = parse_number(f[3], row, "price_eur_mwh");
        double ic = parse_number(f[4], row, "co2_kg_mwh");
        if (cfs < 0.0 || cfs > 1.0)
            throw OutOfRangeCapacityFactor("row " + std::to_string(row) + ": cf_solar = " + f[1]);
        if (cfw < 0.0 || cfw > 1.0)
            throw OutOfRangeCapacityFactor("row " + std::to_string(row) + ": cf_wind = " + f[2]);
        if (ic < 0.0)
            throw NegativeIntensity("row " + std::to_string(row) + ": co2_kg_mwh = " + f[4]);

        data.cf_solar.push_back(cfs);
        data.cf_wind.push_back(cfw);
        data.price.push_back(p);
        data.co2_intensity.push_back(ic);
        ++row;
    }
    data.validate();
    return data;
}

ScenarioSlice window(const ScenarioData& scenario, std::size_t start, std::size_t length) {
    const std::size_t n = scenario.n_hours();
    if (length == 0 || length > n || start > n - length)
        throw OutOfBounds("window [" + std::to_string(start) + ", +" + std::to_string(length) +
                          ") outside scenario of " + std::to_string(n) + " hours");
    ScenarioSlice s;
    s.offset = static_cast<std::int64_t>(start);
    auto copy = [&](const std::vector<double>& src, std::vector<double>& dst) {
        dst.assign(src.begin() + static_cast<std::ptrdiff_t>(start),
                   src.begin() + static_cast<std::ptrdiff_t>(start + length));
    };
    copy(scenario.cf_solar, s.cf_solar);
    copy(scenario.cf_wind, s.cf_wind);
    copy(scenario.price, s.price);
    copy(scenario.co2_intensity, s.co2_intensity);
    return s;
}

ScenarioSlice build_planning_window(const ScenarioData& scenario,
                                    std::size_t next_day_start,
                                    std::size_t remaining_hours,
                                    std::size_t forecast_horizon) {
    if (remaining_hours < 24)
        throw Error("planning window needs at least 24 hours, got " + std::to_string(remaining_hours));

    const std::size_t forecast = std::min(forecast_horizon, remaining_hours);
    ScenarioSlice out = window(scenario, next_day_start, forecast);
    if (forecast == remaining_hours) {
        // Short window: forecast data only.
        out.offset = static_cast<std::int64_t>(next_day_start);
        return out;
    }

    // Historical tail: whole days, midnight-aligned, just before next_day_start,
    // in calendar order; the newest pseudo-future hours are dropped.
    const std::size_t history = remaining_hours - forecast;
    const std::size_t days = (history + 23) / 24;
    if (next_day_start < days * 24)
        throw InsufficientHistory("need " + std::to_string(days * 24) + " historical hours before hour " +
                                  std::to_string(next_day_start));
    const std::size_t hist_start = next_day_start - days * 24;
    ScenarioSlice hist = window(scenario, hist_start, history);

    out.offset = ScenarioSlice::kSyntheticOrigin;
    auto append = [](std::vector<double>& dst, const std::vector<double>& src) {
        dst.insert(dst.end(), src.begin(), src.end());
    };
    append(out.cf_solar, hist.cf_solar);
    append(out.cf_wind, hist.cf_wind);
    append(out.price, hist.price);
    append(out.co2_intensity, hist.co2_intensity);
    return out;
}

} // namespace h2plan
