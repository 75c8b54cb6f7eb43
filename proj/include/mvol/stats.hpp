#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "mvol/errors.hpp"

namespace mvol {

struct MomentSummary {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};

inline MomentSummary summarize(std::span<const double> xs) {
  if (xs.empty()) throw Error("summarize: empty sample");
  double sum = 0.0, sumsq = 0.0;
  for (double x : xs) {
    sum += x;
    sumsq += x * x;
  }
  const double n = static_cast<double>(xs.size());
  const double mean = sum / n;
  double var = 0.0;
  if (xs.size() > 1) var = std::max(0.0, (sumsq - sum * sum / n) / (n - 1.0));
  return {mean, std::sqrt(var / n), xs.size()};
}

/// Two-sample Kolmogorov-Smirnov statistic sup|F₁−F₂|.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw Error("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double f1 = 0.0, f2 = 0.0, d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x1 = a[i], x2 = b[j];
    if (x1 <= x2) f1 = static_cast<double>(++i) / n1;
    if (x2 <= x1) f2 = static_cast<double>(++j) / n2;
    d = std::max(d, std::abs(f1 - f2));
  }
  return d;
}

/// Asymptotic two-sample KS p-value (Kolmogorov distribution tail).
inline double ks_pvalue(double d, std::size_t n1, std::size_t n2) {
  const double ne = static_cast<double>(n1) * static_cast<double>(n2) /
                    static_cast<double>(n1 + n2);
  const double sq = std::sqrt(ne);
  const double lambda = (sq + 0.12 + 0.11 / sq) * d;
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-12 * std::abs(sum) || term < 1e-300) break;
    sign = -sign;
  }
  return std::clamp(sum, 0.0, 1.0);
}

}  // namespace mvol
