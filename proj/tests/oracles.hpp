#pragma once

// Test-only oracles, independent of the library's evaluation paths.

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracles {

// Levy closed form: f_{1/2}(t|lambda) = lambda/(2 sqrt(pi)) t^{-3/2} e^{-lambda^2/(4t)}
inline double levy_density(double t, double lambda = 1.0) {
  return lambda / (2.0 * std::sqrt(M_PI)) * std::pow(t, -1.5) *
         std::exp(-lambda * lambda / (4.0 * t));
}

// E_{1/2}(-x) = e^{x^2} erfc(x)
inline double ml_half(double x) { return std::exp(x * x) * std::erfc(x); }

// two-sample Kolmogorov-Smirnov statistic
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs((double)i / a.size() - (double)j / b.size()));
  }
  return d;
}

// critical value for the two-sample KS test at level 1%
inline double ks_critical_1pct(std::size_t n, std::size_t m) {
  const double c = std::sqrt(-0.5 * std::log(0.005));  // ~1.6276
  return c * std::sqrt((double)(n + m) / ((double)n * (double)m));
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / (double)v.size();
}

inline double std_error(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / ((double)v.size() - 1.0) / (double)v.size());
}

// standard error of the mean for autocorrelated draws (batch means)
inline double batch_means_se(const std::vector<double>& v, std::size_t n_batches) {
  const std::size_t len = v.size() / n_batches;
  std::vector<double> means(n_batches);
  for (std::size_t b = 0; b < n_batches; ++b) {
    double s = 0.0;
    for (std::size_t i = 0; i < len; ++i) s += v[b * len + i];
    means[b] = s / (double)len;
  }
  return std_error(means);
}

}  // namespace oracles
