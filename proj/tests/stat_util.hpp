#pragma once

// Small statistics helpers for the test suites.

#include <cmath>
#include <vector>

namespace statutil {

// Regularized lower incomplete gamma P(a, x) by series expansion.
inline double gamma_p_series(double a, double x) {
  double sum = 1.0 / a;
  double term = sum;
  for (int k = 1; k < 500; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by continued fraction.
inline double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int k = 1; k < 500; ++k) {
    const double an = -k * (k - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Survival function of the chi-square distribution with df degrees of freedom.
inline double chi_square_sf(double x, int df) {
  if (x <= 0.0) return 1.0;
  const double a = df / 2.0;
  const double half = x / 2.0;
  if (half < a + 1.0) return 1.0 - gamma_p_series(a, half);
  return gamma_q_cf(a, half);
}

// Pearson chi-square statistic against uniform expected counts.
inline double chi_square_uniform(const std::vector<long long>& counts, long long total) {
  const double expected = static_cast<double>(total) / counts.size();
  double stat = 0.0;
  for (long long c : counts) {
    const double d = c - expected;
    stat += d * d / expected;
  }
  return stat;
}

inline double binomial_se(double p, long long trials) { return std::sqrt(p * (1.0 - p) / trials); }

}  // namespace statutil
