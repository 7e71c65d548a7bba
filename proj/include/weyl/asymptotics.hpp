#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "weyl/common.hpp"
#include "weyl/root_system.hpp"

namespace weyl {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Number of semistandard tableaux attached to a strictly decreasing
/// non-negative integer starting point:
///   C_eta = prod_{i<j} (eta_i - eta_j) / prod_{i<j} (j - i).
inline BigRational schur_constant(const std::vector<long long>& eta) {
  const int n = static_cast<int>(eta.size());
  if (n < 1) throw validation_error("schur_constant requires a nonempty eta");
  for (int i = 0; i < n; ++i) {
    if (eta[i] < 0)
      throw validation_error("schur_constant requires non-negative integers");
    if (i + 1 < n && eta[i] <= eta[i + 1])
      throw validation_error("schur_constant requires strictly decreasing eta");
  }
  BigInt num = 1, den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      num *= BigInt(eta[i] - eta[j]);
      den *= BigInt(j - i);
    }
  return BigRational(num, den);
}

/// The |h|-weighted Gaussian integral over R^n for each family:
///   A: int exp(-|x|^2/2) prod |x_i - x_j|
///   B: int exp(-|x|^2/2) prod |x_i| prod |x_i^2 - x_j^2|
///   D: int exp(-|x|^2/2) prod |x_i^2 - x_j^2|
inline double selberg_constant(Family family, int n) {
  if (n < 1) throw validation_error("selberg_constant requires n >= 1");
  double v = 1.0;
  switch (family) {
    case Family::A:
      v = std::pow(2.0, 1.5 * n);
      for (int k = 1; k <= n; ++k) v *= std::tgamma(0.5 * k + 1.0);
      return v;
    case Family::B:
      v = std::pow(2.0, 0.5 * (double(n) * n + 3 * n)) / std::pow(kPi, 0.5 * n);
      for (int k = 1; k <= n; ++k)
        v *= std::tgamma(1.0 + 0.5 * k) * std::tgamma(0.5 * (1.0 + k));
      return v;
    case Family::D:
      v = std::pow(2.0, 0.5 * (double(n) * n + 2 * n)) / std::pow(kPi, 0.5 * n);
      for (int k = 1; k <= n; ++k)
        v *= std::tgamma(1.0 + 0.5 * k) * std::tgamma(0.5 * k);
      return v;
  }
  return v;
}

/// Dimension n + 2m of the Bessel process giving the radial part of the
/// conditioned motion: n^2 (A), n(2n+1) (B), n(2n-1) (D).
inline int bessel_dimension(Family family, int n) {
  switch (family) {
    case Family::A: return n * n;
    case Family::B: return n * (2 * n + 1);
    case Family::D: return n * (2 * n - 1);
  }
  return 0;
}

/// The family polynomial P(eta) that carries the starting-point dependence
/// of the survival coefficient. Works with exact rational T as well.
template <class T>
T chamber_polynomial(Family family, const std::vector<T>& eta) {
  const int n = static_cast<int>(eta.size());
  T p(1);
  switch (family) {
    case Family::A:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) p *= (eta[i] - eta[j]);
      return p;
    case Family::B:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) p *= (eta[i] * eta[i] - eta[j] * eta[j]);
      for (int i = 0; i < n; ++i) p *= eta[i];
      return p;
    case Family::D:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) p *= (eta[i] * eta[i] - eta[j] * eta[j]);
      return p;
  }
  return p;
}

/// Survival probability law  P(no wall hit by t) ~ coefficient * t^exponent.
struct AsymptoticLaw {
  double coefficient = 0.0;
  double exponent = 0.0;
  Family family = Family::A;
  Vec eta;
  std::string warning;

  double evaluate(double t) const { return coefficient * std::pow(t, exponent); }
};

namespace detail {

// Absolute constants at the reference starting points, assembled as
// (2 pi t)^{-n/2} prefactor x leading Vandermonde term x Selberg value
// / number of chambers. Each is pinned by an exact small case:
//   A, n=2: 1/sqrt(pi) (one-wall erf expansion)
//   B, n=1: sqrt(2/pi); D, n=1: 1; D, n=2: 1/pi (two independent walls)
inline double lead_constant_A(int n) {
  double nf = 1.0, superfact = 1.0;
  for (int k = 2; k <= n; ++k) nf *= k;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) superfact *= (j - i);
  return selberg_constant(Family::A, n) /
         (std::pow(2.0 * kPi, 0.5 * n) * nf * superfact);
}

inline double lead_constant_B(int n) {
  // equals 2^{3n^2/2} / (pi^n n!) prod Gamma(1+k/2) Gamma((1+k)/2),
  // normalized at eta_ref = (2n-1, ..., 3, 1)
  double nf = 1.0;
  for (int k = 2; k <= n; ++k) nf *= k;
  const double c = std::pow(2.0, double(n) * n - n) /
                   std::pow(2.0 * kPi, 0.5 * n) *
                   selberg_constant(Family::B, n) / nf;
  std::vector<double> ref(n);
  for (int i = 0; i < n; ++i) ref[i] = double(2 * n - 1 - 2 * i);
  return c / chamber_polynomial(Family::B, ref);
}

inline double lead_constant_D(int n) {
  // 2^{(n^2-n+2)/2} pi^{-n} prod_{i=1}^n Gamma(1+i/2) Gamma(i/2) / n!,
  // normalized at eta* = (n-1, ..., 1, 0)
  double nf = 1.0;
  for (int k = 2; k <= n; ++k) nf *= k;
  const double c = selberg_constant(Family::D, n) /
                   (std::pow(2.0 * kPi, 0.5 * n)) * std::pow(2.0, 1.0 - n) / nf;
  std::vector<double> ref(n);
  for (int i = 0; i < n; ++i) ref[i] = double(n - 1 - i);
  return c / chamber_polynomial(Family::D, ref);
}

}  // namespace detail

/// Leading survival law for a start at eta. The coefficient is
/// lead_constant(family, n) * P(eta); the exponent is
/// -n(n-1)/4 (A), -n^2/2 (B), -(n^2-n)/2 (D).
inline AsymptoticLaw survival_asymptote(Family family, const Vec& eta) {
  const int n = static_cast<int>(eta.size());
  if (n < 1) throw validation_error("survival_asymptote requires a nonempty eta");
  auto rs = build_root_system(family, n);
  AsymptoticLaw law;
  law.family = family;
  law.eta = eta;
  switch (family) {
    case Family::A: law.exponent = -0.25 * n * (n - 1); break;
    case Family::B: law.exponent = -0.5 * n * n; break;
    case Family::D: law.exponent = -0.5 * (double(n) * n - n); break;
  }
  if (!chamber_contains(rs, eta, /*strict=*/true)) {
    if (!chamber_contains(rs, eta, /*strict=*/false))
      throw validation_error("eta must lie in the closed chamber");
    law.coefficient = 0.0;
    law.warning = "eta lies on a wall; leading coefficient vanishes and the "
                  "decay is of higher order";
    return law;
  }
  double lead = 1.0;
  switch (family) {
    case Family::A: lead = detail::lead_constant_A(n); break;
    case Family::B: lead = detail::lead_constant_B(n); break;
    case Family::D: lead = detail::lead_constant_D(n); break;
  }
  law.coefficient = lead * chamber_polynomial(family, eta);
  return law;
}

}  // namespace weyl
