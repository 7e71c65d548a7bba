#pragma once

#include <functional>
#include <utility>

#include "weyl/common.hpp"
#include "weyl/quadrature.hpp"

namespace weyl {

/// N_t(x) = (2 pi t)^{-1/2} exp(-x^2 / 2t).
inline double gauss_density(double t, double x) {
  if (!(t > 0.0)) throw validation_error("gauss_density requires t > 0");
  return std::exp(-x * x / (2.0 * t)) / std::sqrt(2.0 * kPi * t);
}

inline double log_gauss_density(double t, double x) {
  if (!(t > 0.0)) throw validation_error("log_gauss_density requires t > 0");
  return -x * x / (2.0 * t) - 0.5 * std::log(2.0 * kPi * t);
}

/// c_t(v) = prod_i N_t(v_i), the unconstrained product density.
inline double unconstrained_density(double t, const Vec& v) {
  double p = 1.0;
  for (double x : v) p *= gauss_density(t, x);
  return p;
}

inline double log_unconstrained_density(double t, const Vec& v) {
  if (!(t > 0.0)) throw validation_error("log_unconstrained_density requires t > 0");
  double s = -0.5 * v.size() * std::log(2.0 * kPi * t);
  for (double x : v) s -= x * x / (2.0 * t);
  return s;
}

/// A one-dimensional transition density p_t(from -> to).
///
/// Kernels are immutable after registration; evaluation is pure, so they can
/// be shared freely across threads.
struct TransitionKernel {
  std::function<double(double t, double from, double to)> evaluate;
  bool symmetric_about_zero = false;
  bool gaussian = false;  // enables the analytically rescaled determinant path

  double log_evaluate(double t, double from, double to) const {
    if (gaussian) return log_gauss_density(t, to - from);
    return std::log(evaluate(t, from, to));
  }
};

inline const TransitionKernel& gauss_kernel() {
  static const TransitionKernel k{
      [](double t, double from, double to) { return gauss_density(t, to - from); },
      /*symmetric_about_zero=*/true,
      /*gaussian=*/true};
  return k;
}

/// Registers a custom kernel, numerically verifying sub-stochasticity
/// (the density must integrate to <= 1 over R) at a few (t, from) probes.
inline TransitionKernel make_kernel(
    std::function<double(double, double, double)> evaluate,
    bool symmetric_about_zero,
    std::vector<std::pair<double, double>> probes = {{1.0, 0.0}, {1.0, 1.5}, {0.5, -0.7}}) {
  TransitionKernel k{std::move(evaluate), symmetric_about_zero, false};
  for (auto [t, from] : probes) {
    double mass = 0.0;
    double R = 8.0 * std::sqrt(t) + std::abs(from) + 1.0;
    for (int grow = 0; grow < 8; ++grow) {
      const double m =
          integrate_1d([&](double y) { return k.evaluate(t, from, y); },
                       from - R, from + R, 1e-9);
      if (std::abs(m - mass) < 1e-9 && grow > 0) {
        mass = m;
        break;
      }
      mass = m;
      R *= 2.0;
    }
    if (mass > 1.0 + 1e-6)
      throw validation_error("kernel integrates to " + std::to_string(mass) +
                             " > 1 at (t, from) = (" + std::to_string(t) + ", " +
                             std::to_string(from) + ")");
  }
  return k;
}

}  // namespace weyl
