#include "portsim/stats.hpp"

#include "portsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace portsim {

namespace {

// Continued fraction for I_x(a, b), modified Lentz.
double beta_continued_fraction(double x, double a, double b)
{
    constexpr int kMaxIterations = 10000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) {
        d = kTiny;
    }
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) {
            return h;
        }
    }
    throw std::runtime_error("incomplete beta did not converge");
}

} // namespace

double incomplete_beta(double x, double a, double b)
{
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("incomplete beta needs positive finite shape parameters");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("incomplete beta needs x in [0, 1]");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (x == 1.0) {
        return 1.0;
    }
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(x, a, b) / a;
    }
    return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double f_upper_tail(double f, double d1, double d2)
{
    if (!(d1 >= 1.0) || !(d2 >= 1.0) || !std::isfinite(d1) || !std::isfinite(d2)) {
        throw std::invalid_argument("F distribution degrees of freedom must be at least 1");
    }
    if (std::isnan(f) || f < 0.0) {
        throw std::invalid_argument("F statistic must be non-negative");
    }
    if (f == 0.0) {
        return 1.0;
    }
    if (std::isinf(f)) {
        return 0.0;
    }
    const double x = d2 / (d2 + d1 * f);
    return std::clamp(incomplete_beta(x, d2 / 2.0, d1 / 2.0), 0.0, 1.0);
}

AnovaResult anova_one_way(std::span<const std::vector<double>> groups)
{
    if (groups.size() < 2) {
        throw ValidationError("groups", "ANOVA needs at least 2 groups, got " + std::to_string(groups.size()));
    }
    std::size_t total = 0;
    double sum = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].size() < 2) {
            throw ValidationError("groups", "ANOVA needs at least 2 observations per group; group " +
                                                std::to_string(g) + " has " + std::to_string(groups[g].size()));
        }
        for (double v : groups[g]) {
            if (!std::isfinite(v)) {
                throw ValidationError("groups", "ANOVA observations must be finite");
            }
            sum += v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        total += groups[g].size();
    }

    AnovaResult out;
    out.df_between = static_cast<int>(groups.size()) - 1;
    out.df_within = static_cast<int>(total - groups.size());
    if (lo == hi) {
        return out;
    }

    const double grand = sum / static_cast<double>(total);
    double ssb = 0.0;
    double ssw = 0.0;
    for (const auto& group : groups) {
        double gsum = 0.0;
        for (double v : group) {
            gsum += v;
        }
        const double mean = gsum / static_cast<double>(group.size());
        ssb += static_cast<double>(group.size()) * (mean - grand) * (mean - grand);
        for (double v : group) {
            ssw += (v - mean) * (v - mean);
        }
    }
    if (ssw == 0.0) {
        out.f_statistic = std::numeric_limits<double>::infinity();
        out.p_value = 0.0;
        return out;
    }
    out.f_statistic = (ssb / out.df_between) / (ssw / out.df_within);
    out.p_value = f_upper_tail(out.f_statistic, out.df_between, out.df_within);
    return out;
}

} // namespace portsim
