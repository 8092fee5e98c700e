#pragma once

#include <span>
#include <vector>

namespace donsa {

double mean(std::span<const double> xs);
double sample_stddev(std::span<const double> xs);  // n-1 denominator

// Student-t quantile, P(T <= result) = p for df degrees of freedom.
// Implemented via the regularized incomplete beta function so no external
// statistics library is needed.
double t_quantile(double p, int df);

// Spearman rank correlation with average ranks on ties.
double spearman_rho(std::span<const double> xs, std::span<const double> ys);

struct CiResult {
  double mean = 0.0;
  double halfwidth = 0.0;
  double halfwidth_pct = 0.0;  // 100 * halfwidth / mean
};

// Two-sided t confidence interval. Throws InsufficientSamples for n < 2.
CiResult confidence_interval(std::span<const double> samples, double level = 0.95);

}  // namespace donsa
