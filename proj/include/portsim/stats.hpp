#pragma once

#include <span>
#include <vector>

namespace portsim {

// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double x, double a, double b);

// P(F > f) for an F(d1, d2) variable.
double f_upper_tail(double f, double d1, double d2);

struct AnovaResult {
    double f_statistic = 0.0;
    int df_between = 0;
    int df_within = 0;
    double p_value = 1.0;
};

// One-way ANOVA. Needs at least two groups of at least two observations.
// When every observation is the same value, F = 0 and p = 1.
AnovaResult anova_one_way(std::span<const std::vector<double>> groups);

} // namespace portsim
