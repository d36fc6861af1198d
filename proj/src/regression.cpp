#include <cmath>
#include <cstddef>

#include "h2plan/dispatch.hpp"
#include "h2plan/errors.hpp"

namespace h2plan {

namespace {

// Regularized incomplete beta I_x(a, b) by the Lentz continued fraction.
double betacf(double a, double b, double x) {
    const double eps = 3e-12;
    const double fpmin = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

// Two-sided p-value of a t statistic with nu degrees of freedom.
double t_p_value(double t, double nu) {
    if (!std::isfinite(t)) return 0.0;
    if (t == 0.0) return 1.0;
    return incomplete_beta(0.5 * nu, 0.5, nu / (nu + t * t));
}

} // namespace

EfficiencyFit linearize_efficiency(const std::vector<EfficiencyPoint>& curve) {
    const std::size_t n = curve.size();
    if (n < 3) throw DegenerateInput("need at least 3 efficiency points");
    for (const EfficiencyPoint& pt : curve)
        if (!(pt.capacity_factor > 0.0 && pt.capacity_factor <= 1.0))
            throw DegenerateInput("capacity factor outside (0,1]");

    // Regress y = f * eta on f.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy_for_zero = 0.0;
    for (const EfficiencyPoint& pt : curve) {
        const double x = pt.capacity_factor;
        const double y = x * pt.efficiency;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy_for_zero += x * y;
    }
    const double nn = static_cast<double>(n);
    const double xbar = sx / nn, ybar = sy / nn;
    const double Sxx = sxx - nn * xbar * xbar;
    if (Sxx <= 1e-14) throw DegenerateInput("all capacity factors equal");
    const double Sxy = sxy - nn * xbar * ybar;

    EfficiencyFit fit;
    fit.slope = Sxy / Sxx;
    fit.intercept = ybar - fit.slope * xbar;
    fit.zero_intercept_slope = syy_for_zero / sxx;

    double rss = 0.0;
    for (const EfficiencyPoint& pt : curve) {
        const double x = pt.capacity_factor;
        const double y = x * pt.efficiency;
        const double e = y - (fit.slope * x + fit.intercept);
        rss += e * e;
    }
    const double nu = nn - 2.0;
    const double s2 = rss / nu;
    const double se_slope = std::sqrt(s2 / Sxx);
    const double se_intercept = std::sqrt(s2 * (1.0 / nn + xbar * xbar / Sxx));
    fit.slope_p_value = se_slope > 0.0 ? t_p_value(fit.slope / se_slope, nu)
                                       : (fit.slope == 0.0 ? 1.0 : 0.0);
    fit.intercept_p_value = se_intercept > 0.0 ? t_p_value(fit.intercept / se_intercept, nu)
                                               : (fit.intercept == 0.0 ? 1.0 : 0.0);
    return fit;
}

} // namespace h2plan
