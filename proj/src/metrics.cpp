#include "h2plan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <memory>
#include <thread>

#include "h2plan/errors.hpp"

namespace h2plan {

void GreenRules::validate() const {
    if (price_threshold_eur_mwh < 0.0 || intensity_threshold_kg_mwh < 0.0 ||
        re_share_threshold < 0.0)
        throw ConfigError("green rule thresholds must be nonnegative");
}

double levelised_cost(const SimulationReport& report, double trading_profit_eur,
                      const PlantConfig& plant) {
    (void)plant;
    if (!(report.total_h2_kg > 0.0)) throw ZeroProduction("no hydrogen produced");
    return (report.costs.capital_eur + report.costs.operation_eur +
            report.costs.electricity_eur + trading_profit_eur) /
           report.total_h2_kg;
}

double specific_emissions(const SimulationReport& report) {
    if (!(report.total_h2_kg > 0.0)) throw ZeroProduction("no hydrogen produced");
    return report.costs.co2_kg / report.total_h2_kg;
}

namespace {

struct HourAttribution {
    double grid_share = 0.0;   // of this hour's hydrogen
    double onsite_kg = 0.0;
    double grid_kg = 0.0;
    double grid_emissions_kg = 0.0;
    bool price_green = false;
    bool hourly_green = false;
};

HourAttribution attribute_hour(const DispatchResult& r, const ScenarioData& s,
                               const GreenRules& rules, std::size_t t) {
    HourAttribution a;
    const double g4 = r.g4[t];
    if (g4 > 0.0) {
        const double used = std::min(r.g5i[t], g4);  // import feeds the electrolyser first
        a.grid_share = used / g4;
        a.grid_emissions_kg = used * s.co2_intensity[t];
    }
    a.onsite_kg = r.m[t] * (1.0 - a.grid_share);
    a.grid_kg = r.m[t] * a.grid_share;
    a.price_green = s.price[t] < rules.price_threshold_eur_mwh;
    a.hourly_green = s.co2_intensity[t] < rules.intensity_threshold_kg_mwh;
    return a;
}

} // namespace

GreenBreakdown classify_green(const SimulationReport& report, const ScenarioData& scenario,
                              const GreenRules& rules) {
    rules.validate();
    const DispatchResult& r = report.hourly;
    if (r.n_hours() > scenario.n_hours())
        throw Error("report longer than scenario");

    GreenBreakdown g;
    double nongreen_emissions = 0.0;
    for (std::size_t t = 0; t < r.n_hours(); ++t) {
        const HourAttribution a = attribute_hour(r, scenario, rules, t);
        g.h2_onsite_green_kg += a.onsite_kg;
        if (a.grid_kg <= 0.0) continue;
        if (a.price_green) {
            g.h2_grid_green_kg += a.grid_kg;
        } else if (rules.hourly_intensity_mode && a.hourly_green) {
            g.h2_grid_green_hourly_kg += a.grid_kg;
        } else {
            g.h2_nongreen_kg += a.grid_kg;
            nongreen_emissions += a.grid_emissions_kg;
        }
    }
    g.specific_co2_nongreen =
        g.h2_nongreen_kg > 0.0 ? nongreen_emissions / g.h2_nongreen_kg : 0.0;
    return g;
}

std::vector<ParetoPoint> pareto_sweep(const ScenarioData& scenario, const PlantConfig& plant,
                                      const DeliveryContract& contract,
                                      const std::vector<double>& alphas, RunMode mode,
                                      unsigned max_threads) {
    for (double a : alphas)
        if (a < 0.0 || a > 1.0) throw ConfigError("alpha outside [0,1]");

    const double trading_profit = run_trading_only(scenario, plant);

    std::vector<ParetoPoint> points(alphas.size());
    std::vector<std::exception_ptr> errors(alphas.size());

    auto evaluate = [&](std::size_t i) {
        try {
            SimulationReport rep = (mode == RunMode::Benchmark)
                                       ? run_benchmark(scenario, plant, contract, alphas[i])
                                       : run_day_to_day(scenario, plant, contract, alphas[i]);
            ParetoPoint pt;
            pt.alpha = alphas[i];
            pt.lcoh_eur_per_kg = levelised_cost(rep, trading_profit, plant);
            pt.specific_co2 = specific_emissions(rep);
            pt.total_h2_kg = rep.total_h2_kg;
            pt.electricity_eur = rep.costs.electricity_eur;
            pt.co2_kg = rep.costs.co2_kg;
            points[i] = pt;
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    unsigned workers = max_threads == 0 ? std::thread::hardware_concurrency() : max_threads;
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(alphas.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < alphas.size(); ++i) evaluate(i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w]() {
                for (std::size_t i = w; i < alphas.size(); i += workers) evaluate(i);
            });
        for (std::thread& t : pool) t.join();
    }
    for (std::size_t i = 0; i < errors.size(); ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
    return points;
}

std::vector<NormalizedPoint> normalized_comparison(const std::vector<ParetoPoint>& day2day,
                                                   const std::vector<ParetoPoint>& benchmark) {
    if (day2day.size() != benchmark.size())
        throw MismatchedAlphas("series have different lengths");
    std::vector<NormalizedPoint> out;
    for (std::size_t i = 0; i < day2day.size(); ++i) {
        if (day2day[i].alpha != benchmark[i].alpha)
            throw MismatchedAlphas("alpha mismatch at index " + std::to_string(i));
        NormalizedPoint p;
        p.alpha = day2day[i].alpha;
        if (benchmark[i].lcoh_eur_per_kg == 0.0 || benchmark[i].specific_co2 == 0.0) {
            p.defined = false;
        } else {
            p.lcoh_ratio = day2day[i].lcoh_eur_per_kg / benchmark[i].lcoh_eur_per_kg;
            p.co2_ratio = day2day[i].specific_co2 / benchmark[i].specific_co2;
        }
        out.push_back(p);
    }
    return out;
}

CumulativeSeries cumulative_series(const SimulationReport& report, const ScenarioData& scenario) {
    const DispatchResult& r = report.hourly;
    if (r.n_hours() > scenario.n_hours()) throw Error("report longer than scenario");
    CumulativeSeries cs;
    double h2 = 0.0, revenue = 0.0;
    for (std::size_t t = 0; t < r.n_hours(); ++t) {
        h2 += r.m[t];
        revenue += (r.g5e[t] - r.g5i[t]) * scenario.price[t];
        if ((t + 1) % 24 == 0 || t + 1 == r.n_hours()) {
            cs.h2_kg.push_back(h2);
            cs.net_revenue_eur.push_back(revenue);
        }
    }
    return cs;
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

void write_pareto_csv(const std::vector<ParetoPoint>& points, const std::string& path) {
    File f = open_out(path);
    std::fputs("alpha,lcoh_eur_per_kg,specific_co2_kg_per_kg\n", f.get());
    for (const ParetoPoint& p : points)
        std::fprintf(f.get(), "%.10g,%.10g,%.10g\n", p.alpha, p.lcoh_eur_per_kg, p.specific_co2);
}

void write_green_csv(const GreenBreakdown& g, const std::string& path) {
    File f = open_out(path);
    std::fputs(
        "h2_onsite_green_kg,h2_grid_green_kg,h2_grid_green_hourly_kg,h2_nongreen_kg,"
        "specific_co2_nongreen\n",
        f.get());
    std::fprintf(f.get(), "%.10g,%.10g,%.10g,%.10g,%.10g\n", g.h2_onsite_green_kg,
                 g.h2_grid_green_kg, g.h2_grid_green_hourly_kg, g.h2_nongreen_kg,
                 g.specific_co2_nongreen);
}

void write_cumulative_csv(const CumulativeSeries& series, const std::string& path) {
    File f = open_out(path);
    std::fputs("day,cumulative_h2_kg,cumulative_net_revenue_eur\n", f.get());
    for (std::size_t d = 0; d < series.h2_kg.size(); ++d)
        std::fprintf(f.get(), "%zu,%.10g,%.10g\n", d, series.h2_kg[d],
                     series.net_revenue_eur[d]);
}

void write_green_scatter_csv(const SimulationReport& report, const ScenarioData& scenario,
                             const GreenRules& rules, const std::string& path) {
    File f = open_out(path);
    std::fputs("hour,price_eur_mwh,co2_kg_mwh,grid_share,green\n", f.get());
    const DispatchResult& r = report.hourly;
    for (std::size_t t = 0; t < r.n_hours(); ++t) {
        if (r.m[t] <= 0.0) continue;
        const HourAttribution a = attribute_hour(r, scenario, rules, t);
        const bool grid_green =
            a.price_green || (rules.hourly_intensity_mode && a.hourly_green);
        const bool green = a.grid_kg <= 0.0 || grid_green;
        std::fprintf(f.get(), "%zu,%.10g,%.10g,%.10g,%d\n", t, scenario.price[t],
                     scenario.co2_intensity[t], a.grid_share, green ? 1 : 0);
    }
}

} // namespace h2plan
