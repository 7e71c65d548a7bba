#pragma once

#include "weyl/common.hpp"
#include "weyl/kernels.hpp"
#include "weyl/linalg.hpp"
#include "weyl/root_system.hpp"

namespace weyl {

enum class Boundary { absorbing, reflecting };
enum class Method { group_sum, determinant };

struct DensityRequest {
  RootSystem rs;
  Vec eta;
  Vec lam;
  double t = 1.0;
  Boundary boundary = Boundary::absorbing;
  Method method = Method::group_sum;
};

inline constexpr double kClampRel = 1e-14;

namespace detail {

// Streaming signed log-sum-exp: accumulates terms sign * exp(lg) while
// tracking the running maximum so huge dynamic ranges cannot overflow.
struct SignedAccumulator {
  double m = -std::numeric_limits<double>::infinity();
  double pos = 0.0, neg = 0.0;

  void add(int sign, double lg) {
    if (sign == 0 || lg == -std::numeric_limits<double>::infinity()) return;
    if (lg > m) {
      const double scale = std::isfinite(m) ? std::exp(m - lg) : 0.0;
      pos *= scale;
      neg *= scale;
      m = lg;
    }
    const double v = std::exp(lg - m);
    if (sign > 0)
      pos += v;
    else
      neg += v;
  }

  double total() const {
    if (!std::isfinite(m)) return 0.0;
    return (pos - neg) * std::exp(m);
  }
  // clamps a tiny negative total (relative to the accumulated magnitude) to 0
  double total_clamped(bool* clamped) const {
    if (!std::isfinite(m)) return 0.0;
    const double d = pos - neg;
    if (d < 0.0 && -d <= kClampRel * std::max(pos, neg)) {
      if (clamped) *clamped = true;
      return 0.0;
    }
    return d * std::exp(m);
  }
};

inline void check_density_inputs(const RootSystem& rs, const Vec& eta,
                                 const Vec& lam, double t) {
  if (static_cast<int>(eta.size()) != rs.rank_n ||
      static_cast<int>(lam.size()) != rs.rank_n)
    throw validation_error("eta/lambda dimension mismatch");
  if (!(t > 0.0)) throw validation_error("density requires t > 0");
}

}  // namespace detail

/// Raw signed reflection sum  sum_w sgn(w) c_t(w(lambda) - eta)
/// (or the unsigned sum when signed_sum = false), with no chamber
/// validation and no clamping. Antisymmetric in lambda under W.
inline double reflection_sum_raw(const RootSystem& rs, const Vec& eta,
                                 const Vec& lam, double t, bool signed_sum,
                                 long long cap = kDefaultGroupCap) {
  detail::check_density_inputs(rs, eta, lam, t);
  detail::SignedAccumulator acc;
  const int n = rs.rank_n;
  Vec diff(n);
  for_each_group_element(
      rs,
      [&](const GroupElement& w) {
        for (int i = 0; i < n; ++i) diff[i] = w.sign[i] * lam[w.perm[i]] - eta[i];
        acc.add(signed_sum ? w.det : 1, log_unconstrained_density(t, diff));
      },
      cap);
  return acc.total();
}

/// Same group sum for a product of n independent 1-D diffusions with the
/// given transition kernel (test oracle for the determinant formulas).
inline double reflection_sum_kernel(const RootSystem& rs, const Vec& eta,
                                    const Vec& lam, double t,
                                    const TransitionKernel& kernel,
                                    bool signed_sum,
                                    long long cap = kDefaultGroupCap) {
  detail::check_density_inputs(rs, eta, lam, t);
  detail::SignedAccumulator acc;
  const int n = rs.rank_n;
  for_each_group_element(
      rs,
      [&](const GroupElement& w) {
        double lg = 0.0;
        for (int i = 0; i < n; ++i)
          lg += kernel.log_evaluate(t, eta[i], w.sign[i] * lam[w.perm[i]]);
        acc.add(signed_sum ? w.det : 1, lg);
      },
      cap);
  return acc.total();
}

/// Constrained transition density by direct summation over the group:
///   absorbing:  b_t(eta, lambda)  = sum_w sgn(w) c_t(w(lambda) - eta)
///   reflecting: b'_t(eta, lambda) = sum_w c_t(w(lambda) - eta) / #stab(lambda)
inline double reflection_density(const DensityRequest& req,
                                 bool* clamped = nullptr,
                                 long long cap = kDefaultGroupCap) {
  detail::check_density_inputs(req.rs, req.eta, req.lam, req.t);
  if (!chamber_contains(req.rs, req.eta) || !chamber_contains(req.rs, req.lam))
    throw validation_error("eta and lambda must lie in the closed chamber");
  const bool signed_sum = (req.boundary == Boundary::absorbing);
  detail::SignedAccumulator acc;
  const int n = req.rs.rank_n;
  Vec diff(n);
  for_each_group_element(
      req.rs,
      [&](const GroupElement& w) {
        for (int i = 0; i < n; ++i)
          diff[i] = w.sign[i] * req.lam[w.perm[i]] - req.eta[i];
        acc.add(signed_sum ? w.det : 1, log_unconstrained_density(req.t, diff));
      },
      cap);
  if (signed_sum) return acc.total_clamped(clamped);
  return acc.total() / double(stabilizer_size(req.rs, req.lam));
}

namespace detail {

// Gaussian matrix entries in signed-log form. Writing
//   N_t(l-e) -+ N_t(l+e) = (2 pi t)^{-1/2} exp(-(l^2+e^2)/2t) * {2sinh, 2cosh}(l e / t)
// keeps every entry finite for any (eta, lambda, t).
inline SignedLog gauss_entry_plain(double t, double l, double e) {
  return {log_gauss_density(t, l - e), 1};
}

inline SignedLog gauss_entry_sinh(double t, double l, double e) {
  const double x = l * e / t;
  if (x == 0.0) return SignedLog::zero();
  const double ax = std::abs(x);
  const double base = -(l * l + e * e) / (2.0 * t) - 0.5 * std::log(2.0 * kPi * t);
  // log(2 sinh ax) = ax + log1p(-exp(-2 ax))
  return {base + ax + std::log1p(-std::exp(-2.0 * ax)), x > 0 ? 1 : -1};
}

inline SignedLog gauss_entry_cosh(double t, double l, double e) {
  const double x = std::abs(l * e / t);
  const double base = -(l * l + e * e) / (2.0 * t) - 0.5 * std::log(2.0 * kPi * t);
  // log(2 cosh x) = x + log1p(exp(-2 x))
  return {base + x + std::log1p(std::exp(-2.0 * x)), 1};
}

inline double finish_det(const ScaledDet& d, bool* clamped) {
  if (d.det.sign < 0 && d.det.lg - d.log_scale < std::log(kClampRel)) {
    if (clamped) *clamped = true;
    return 0.0;
  }
  return d.det.value();
}

}  // namespace detail

/// det | p_t(eta_j -> lambda_i) |, the non-collision density for n
/// independent copies of the diffusion (family A chamber).
inline double determinant_density_A(const Vec& eta, const Vec& lam, double t,
                                    const TransitionKernel& kernel = gauss_kernel(),
                                    bool* clamped = nullptr) {
  if (eta.size() != lam.size()) throw validation_error("eta/lambda size mismatch");
  if (!(t > 0.0)) throw validation_error("determinant_density_A requires t > 0");
  const int n = static_cast<int>(eta.size());
  SLogMat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = kernel.gaussian
                       ? detail::gauss_entry_plain(t, lam[i], eta[j])
                       : SignedLog::from(kernel.evaluate(t, eta[j], lam[i]));
  return detail::finish_det(det_signed_log(m), clamped);
}

/// det | p_t(eta_j -> lambda_i) - p_t(eta_j -> -lambda_i) |  (family B:
/// non-colliding particles with an absorbing wall at 0). The kernel must
/// be symmetric about 0.
inline double determinant_density_B(const Vec& eta, const Vec& lam, double t,
                                    const TransitionKernel& kernel = gauss_kernel(),
                                    bool* clamped = nullptr) {
  if (eta.size() != lam.size()) throw validation_error("eta/lambda size mismatch");
  if (!(t > 0.0)) throw validation_error("determinant_density_B requires t > 0");
  if (!kernel.symmetric_about_zero)
    throw validation_error(
        "family B requires a kernel symmetric about 0; asymmetric kernel refused");
  const int n = static_cast<int>(eta.size());
  SLogMat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = kernel.gaussian
                       ? detail::gauss_entry_sinh(t, lam[i], eta[j])
                       : SignedLog::from(kernel.evaluate(t, eta[j], lam[i]) -
                                         kernel.evaluate(t, eta[j], -lam[i]));
  return detail::finish_det(det_signed_log(m), clamped);
}

/// Family D density:
///   (1/2) [ det |N_t(l_i - e_j) - N_t(l_i + e_j)|
///         + det |N_t(l_i - e_j) + N_t(l_i + e_j)| ].
inline double determinant_density_D(const Vec& eta, const Vec& lam, double t,
                                    bool* clamped = nullptr) {
  if (eta.size() != lam.size()) throw validation_error("eta/lambda size mismatch");
  if (!(t > 0.0)) throw validation_error("determinant_density_D requires t > 0");
  const int n = static_cast<int>(eta.size());
  SLogMat minus(n), plus(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      minus.at(i, j) = detail::gauss_entry_sinh(t, lam[i], eta[j]);
      plus.at(i, j) = detail::gauss_entry_cosh(t, lam[i], eta[j]);
    }
  const ScaledDet dm = det_signed_log(minus);
  const ScaledDet dp = det_signed_log(plus);
  SignedLog half = slog_mul(SignedLog::from(0.5), slog_add(dm.det, dp.det));
  ScaledDet combined{half, std::max(dm.log_scale, dp.log_scale)};
  return detail::finish_det(combined, clamped);
}

/// Gaussian determinant density dispatched on the family.
inline double determinant_density(const RootSystem& rs, const Vec& eta,
                                  const Vec& lam, double t,
                                  bool* clamped = nullptr) {
  switch (rs.family) {
    case Family::A: return determinant_density_A(eta, lam, t, gauss_kernel(), clamped);
    case Family::B: return determinant_density_B(eta, lam, t, gauss_kernel(), clamped);
    case Family::D: return determinant_density_D(eta, lam, t, clamped);
  }
  return 0.0;
}

/// Reflecting-boundary density via permanents, ignoring the measure-zero
/// stabilizer denominator:
///   A: perm |N_t(l_i - e_j)|
///   B: perm |N_t(l_i - e_j) + N_t(l_i + e_j)|
///   D: (1/2)[ perm |N - N'| + perm |N + N'| ]   (signs kept inside)
inline double permanent_density(Family family, const Vec& eta, const Vec& lam,
                                double t, int cap = 12) {
  if (eta.size() != lam.size()) throw validation_error("eta/lambda size mismatch");
  if (!(t > 0.0)) throw validation_error("permanent_density requires t > 0");
  const int n = static_cast<int>(eta.size());
  if (n > cap)
    throw validation_error("permanent_density capped at n = " + std::to_string(cap));
  SLogMat m(n);
  switch (family) {
    case Family::A:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          m.at(i, j) = detail::gauss_entry_plain(t, lam[i], eta[j]);
      return permanent_signed_log(m, cap).det.value();
    case Family::B:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          m.at(i, j) = detail::gauss_entry_cosh(t, lam[i], eta[j]);
      return permanent_signed_log(m, cap).det.value();
    case Family::D: {
      SLogMat minus(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          minus.at(i, j) = detail::gauss_entry_sinh(t, lam[i], eta[j]);
          m.at(i, j) = detail::gauss_entry_cosh(t, lam[i], eta[j]);
        }
      const double pm = permanent_signed_log(minus, cap).det.value();
      const double pp = permanent_signed_log(m, cap).det.value();
      return 0.5 * (pm + pp);
    }
  }
  return 0.0;
}

/// Density of the h-transformed (conditioned-to-stay) process:
///   h(lambda) b_t(eta, lambda) / h(eta).
/// h is harmonic, so this integrates to exactly 1 over the chamber.
inline double conditioned_density(const RootSystem& rs, const Vec& eta,
                                  const Vec& lam, double t,
                                  bool* clamped = nullptr) {
  detail::check_density_inputs(rs, eta, lam, t);
  const double he = h_product(rs, eta);
  if (!chamber_contains(rs, eta, /*strict=*/true) || he <= 0.0)
    throw validation_error(
        "conditioned_density requires a strictly interior starting point");
  const double b = determinant_density(rs, eta, lam, t, clamped);
  return std::max(0.0, h_product(rs, lam) * b / he);
}

}  // namespace weyl
