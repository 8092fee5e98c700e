#include "donsa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "donsa/errors.hpp"

namespace donsa {

namespace {

double log_gamma(double x) {
  // Lanczos approximation, g=7, n=9.
  static const double coeffs[] = {0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
                                  771.32342877765313,   -176.61502916214059, 12.507343278686905,
                                  -0.13857109526572012, 9.9843695780195716e-6,
                                  1.5056327351493116e-7};
  if (x < 0.5) {
    // Reflection formula.
    return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
  }
  x -= 1.0;
  double a = coeffs[0];
  const double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += coeffs[i] / (x + i);
  return 0.5 * std::log(2.0 * M_PI) + (x + 0.5) * std::log(t) - t + std::log(a);
}

// Continued fraction for the regularized incomplete beta (Lentz's method).
double beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 3e-16) break;
  }
  return h;
}

double reg_inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front =
      log_gamma(a + b) - log_gamma(a) - log_gamma(b) + a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double t_cdf(double t, int df) {
  const double x = df / (df + t * t);
  const double p = 0.5 * reg_inc_beta(df / 2.0, 0.5, x);
  return t >= 0.0 ? 1.0 - p : p;
}

std::vector<double> average_ranks(std::span<const double> xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double mean(std::span<const double> xs) {
  if (xs.empty()) throw InsufficientSamples("mean of an empty sample");
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_stddev(std::span<const double> xs) {
  if (xs.size() < 2) throw InsufficientSamples("sample stddev needs >= 2 samples");
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double t_quantile(double p, int df) {
  if (df < 1) throw InvalidArgument("t_quantile: df must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("t_quantile: p must be in (0, 1)");
  if (p == 0.5) return 0.0;
  // Bisection on the CDF; the bracket grows until it spans p.
  double lo = -1.0, hi = 1.0;
  while (t_cdf(lo, df) > p) lo *= 2.0;
  while (t_cdf(hi, df) < p) hi *= 2.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (t_cdf(mid, df) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double spearman_rho(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidArgument("spearman_rho: size mismatch");
  if (xs.size() < 2) throw InsufficientSamples("spearman_rho needs >= 2 points");
  const std::vector<double> rx = average_ranks(xs);
  const std::vector<double> ry = average_ranks(ys);
  const double mx = mean(rx), my = mean(ry);
  double num = 0.0, dx = 0.0, dy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    num += (rx[i] - mx) * (ry[i] - my);
    dx += (rx[i] - mx) * (rx[i] - mx);
    dy += (ry[i] - my) * (ry[i] - my);
  }
  if (dx == 0.0 || dy == 0.0) return 0.0;  // a constant series carries no ordering signal
  return num / std::sqrt(dx * dy);
}

CiResult confidence_interval(std::span<const double> samples, double level) {
  if (samples.size() < 2)
    throw InsufficientSamples("confidence interval needs >= 2 samples");
  if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("confidence level must be in (0,1)");
  CiResult ci;
  ci.mean = mean(samples);
  const double s = sample_stddev(samples);
  const double t = t_quantile(0.5 + level / 2.0, static_cast<int>(samples.size()) - 1);
  ci.halfwidth = t * s / std::sqrt(static_cast<double>(samples.size()));
  ci.halfwidth_pct = ci.halfwidth == 0.0 ? 0.0 : 100.0 * ci.halfwidth / ci.mean;
  return ci;
}

}  // namespace donsa
