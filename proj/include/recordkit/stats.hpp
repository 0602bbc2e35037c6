#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "recordkit/errors.hpp"

namespace recordkit::stats {

/// Regularized lower incomplete gamma P(a,x), series/continued-fraction split
/// at x = a+1.
inline double reg_lower_gamma(double a, double x) {
  if (!(a > 0) || x < 0) throw DomainError("reg_lower_gamma requires a > 0, x >= 0");
  if (x == 0) return 0.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a, sum = 1.0 / a, term = sum;
    for (int n = 0; n < 500; ++n) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lg);
  }
  // Lentz continued fraction for Q(a,x).
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  const double q = std::exp(-x + a * std::log(x) - lg) * h;
  return 1.0 - q;
}

inline double chi_square_cdf(double df, double x) {
  return x <= 0 ? 0.0 : reg_lower_gamma(df / 2.0, x / 2.0);
}

/// Upper-alpha critical value of the chi-square law with df degrees of freedom.
inline double chi_square_critical(std::size_t df, double alpha) {
  if (df == 0 || !(alpha > 0) || !(alpha < 1)) throw DomainError("bad chi-square inversion");
  const double target = 1.0 - alpha;
  double lo = 0.0, hi = static_cast<double>(df);
  while (chi_square_cdf(static_cast<double>(df), hi) < target) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (chi_square_cdf(static_cast<double>(df), mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Kolmogorov limit cdf K(z) = P(sup|B(t)| <= z) = 1 - 2 sum (-1)^{j-1} e^{-2 j^2 z^2}.
inline double kolmogorov_cdf(double z) {
  if (z <= 0) return 0.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * z * z);
    sum += (j % 2 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::max(0.0, 1.0 - 2.0 * sum);
}

/// c with P(sqrt(n) D_n > c) -> alpha; the asymptotic KS critical value is c/sqrt(n).
inline double kolmogorov_critical(double alpha) {
  double lo = 0.2, hi = 4.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_cdf(mid) < 1.0 - alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// One-sample KS statistic sup_x |F_n(x) - F(x)|.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InsufficientSamples("KS statistic of empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  return d;
}

/// Two-sample KS statistic sup_x |F_n(x) - G_m(x)|.
inline double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InsufficientSamples("two-sample KS with empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

struct Moments {
  double mean = 0;
  double sample_variance = 0;  // divisor n-1
  std::size_t n = 0;
};

inline Moments moments(const std::vector<double>& xs) {
  Moments m;
  m.n = xs.size();
  if (m.n == 0) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(m.n);
  if (m.n > 1) {
    for (double x : xs) m.sample_variance += (x - m.mean) * (x - m.mean);
    m.sample_variance /= static_cast<double>(m.n - 1);
  }
  return m;
}

/// Pearson correlation; throws on degenerate (zero-variance) input.
inline double correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ShapeMismatch("correlation needs equally long samples");
  if (x.size() < 2) throw InsufficientSamples("correlation of fewer than 2 points");
  const Moments mx = moments(x), my = moments(y);
  if (mx.sample_variance == 0 || my.sample_variance == 0)
    throw InsufficientSamples("correlation of zero-variance sample");
  double cov = 0;
  for (std::size_t i = 0; i < x.size(); ++i) cov += (x[i] - mx.mean) * (y[i] - my.mean);
  cov /= static_cast<double>(x.size() - 1);
  return cov / std::sqrt(mx.sample_variance * my.sample_variance);
}

}  // namespace recordkit::stats
