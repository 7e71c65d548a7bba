#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "weyl/common.hpp"

namespace weyl {

/// Regularized lower incomplete gamma P(a, x) (series / continued fraction).
inline double reg_lower_gamma(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw validation_error("reg_lower_gamma domain error");
  if (x == 0.0) return 0.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lg);
  }
  // Lentz continued fraction for Q(a, x)
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  const double q = std::exp(-x + a * std::log(x) - lg) * h;
  return 1.0 - q;
}

/// CDF of the chi distribution with `dof` degrees of freedom.
inline double chi_cdf(double x, double dof) {
  if (x <= 0.0) return 0.0;
  return reg_lower_gamma(0.5 * dof, 0.5 * x * x);
}

/// Asymptotic Kolmogorov tail Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2),
/// switching to the theta-transformed series below lambda = 1.18 where the
/// direct sum converges too slowly.
inline double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    const double f = kPi * kPi / (8.0 * lambda * lambda);
    double p = 0.0;
    for (int k = 1; k <= 50; k += 2) {
      const double term = std::exp(-double(k) * k * f);
      p += term;
      if (term < 1e-18) break;
    }
    return std::clamp(1.0 - std::sqrt(2.0 * kPi) / lambda * p, 0.0, 1.0);
  }
  double sum = 0.0, sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * double(k) * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-18) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

struct KsResult {
  double statistic = 0.0;  // sup-norm distance between the CDFs
  double p_value = 1.0;
  std::size_t n = 0;
};

/// Two-sided one-sample KS test of `samples` against the CDF `cdf`.
template <class Cdf>
KsResult ks_one_sample(std::vector<double> samples, const Cdf& cdf) {
  if (samples.empty()) throw validation_error("ks_one_sample: empty sample set");
  std::sort(samples.begin(), samples.end());
  const double n = double(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - double(i) / n));
    d = std::max(d, std::abs(double(i + 1) / n - f));
  }
  const double sn = std::sqrt(n);
  KsResult r{d, kolmogorov_q((sn + 0.12 + 0.11 / sn) * d), samples.size()};
  return r;
}

/// Two-sided two-sample KS test.
inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw validation_error("ks_two_sample: empty sample set");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  const double ne = double(a.size()) * b.size() / double(a.size() + b.size());
  const double sn = std::sqrt(ne);
  return {d, kolmogorov_q((sn + 0.12 + 0.11 / sn) * d), a.size() + b.size()};
}

/// Euclidean norm.
inline double norm2(const Vec& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace weyl
