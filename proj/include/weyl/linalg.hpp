#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "weyl/common.hpp"

namespace weyl {

/// Value represented as sign * exp(lg); sign == 0 encodes exact zero.
struct SignedLog {
  double lg = -std::numeric_limits<double>::infinity();
  int sign = 0;

  static SignedLog zero() { return {}; }
  static SignedLog from(double v) {
    if (v == 0.0) return {};
    return {std::log(std::abs(v)), v > 0 ? 1 : -1};
  }
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(lg); }
};

inline SignedLog slog_mul(SignedLog a, SignedLog b) {
  if (a.sign == 0 || b.sign == 0) return SignedLog::zero();
  return {a.lg + b.lg, a.sign * b.sign};
}

inline SignedLog slog_add(SignedLog a, SignedLog b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  if (a.lg < b.lg) std::swap(a, b);
  const double r = b.sign * a.sign * std::exp(b.lg - a.lg);
  const double s = 1.0 + r;
  if (s <= 0.0) {
    if (s == 0.0) return SignedLog::zero();
    return {a.lg + std::log(-s), -a.sign};
  }
  return {a.lg + std::log(s), a.sign};
}

/// Small dense row-major matrix.
struct Mat {
  int n = 0;
  std::vector<double> a;
  explicit Mat(int n_) : n(n_), a(std::size_t(n_) * n_, 0.0) {}
  double& at(int i, int j) { return a[std::size_t(i) * n + j]; }
  double at(int i, int j) const { return a[std::size_t(i) * n + j]; }
};

struct SLogMat {
  int n = 0;
  std::vector<SignedLog> a;
  explicit SLogMat(int n_) : n(n_), a(std::size_t(n_) * n_) {}
  SignedLog& at(int i, int j) { return a[std::size_t(i) * n + j]; }
  SignedLog at(int i, int j) const { return a[std::size_t(i) * n + j]; }
};

/// Determinant of a double matrix by LU with partial pivoting,
/// returned in signed-log form. Destroys the input.
inline SignedLog lu_det(Mat& m) {
  const int n = m.n;
  SignedLog det{0.0, 1};
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(m.at(k, k));
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m.at(i, k)) > best) {
        best = std::abs(m.at(i, k));
        piv = i;
      }
    if (best == 0.0) return SignedLog::zero();
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      det.sign = -det.sign;
    }
    const double d = m.at(k, k);
    det = slog_mul(det, SignedLog::from(d));
    for (int i = k + 1; i < n; ++i) {
      const double f = m.at(i, k) / d;
      if (f == 0.0) continue;
      for (int j = k + 1; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
      m.at(i, k) = 0.0;
    }
  }
  return det;
}

struct ScaledDet {
  SignedLog det;       // the determinant itself
  double log_scale;    // sum of per-row shifts; exp(log_scale) bounds the
                       // magnitude of any single expansion term
};

/// Determinant of a matrix given entrywise in signed-log form.
/// Each row is rescaled by its largest magnitude (log accumulated
/// separately) before LU, so entries spanning hundreds of orders of
/// magnitude stay representable.
inline ScaledDet det_signed_log(const SLogMat& m) {
  const int n = m.n;
  Mat work(n);
  double shift_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double rmax = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
      if (m.at(i, j).sign != 0) rmax = std::max(rmax, m.at(i, j).lg);
    if (!std::isfinite(rmax)) return {SignedLog::zero(), 0.0};  // zero row
    shift_sum += rmax;
    for (int j = 0; j < n; ++j) {
      const auto& e = m.at(i, j);
      work.at(i, j) = (e.sign == 0) ? 0.0 : e.sign * std::exp(e.lg - rmax);
    }
  }
  SignedLog d = lu_det(work);
  if (d.sign != 0) d.lg += shift_sum;
  return {d, shift_sum};
}

/// Permanent via Ryser's inclusion-exclusion (Gray-code order),
/// with the same per-row rescaling. Capped at n <= cap.
inline ScaledDet permanent_signed_log(const SLogMat& m, int cap = 12) {
  const int n = m.n;
  if (n > cap)
    throw validation_error("permanent capped at n = " + std::to_string(cap));
  Mat work(n);
  double shift_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double rmax = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
      if (m.at(i, j).sign != 0) rmax = std::max(rmax, m.at(i, j).lg);
    if (!std::isfinite(rmax)) return {SignedLog::zero(), 0.0};
    shift_sum += rmax;
    for (int j = 0; j < n; ++j) {
      const auto& e = m.at(i, j);
      work.at(i, j) = (e.sign == 0) ? 0.0 : e.sign * std::exp(e.lg - rmax);
    }
  }
  std::vector<double> rowsum(n, 0.0);
  double total = 0.0;
  unsigned long long prev = 0;
  const unsigned long long full = (1ull << n);
  for (unsigned long long g = 1; g < full; ++g) {
    const unsigned long long gray = g ^ (g >> 1);
    const unsigned long long diff = gray ^ prev;
    const int j = __builtin_ctzll(diff);
    const double sgn_col = (gray & diff) ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) rowsum[i] += sgn_col * work.at(i, j);
    prev = gray;
    double prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= rowsum[i];
    const int bits = __builtin_popcountll(gray);
    total += ((n - bits) % 2 == 0 ? 1.0 : -1.0) * prod;
  }
  SignedLog res = SignedLog::from(total);
  if (res.sign != 0) res.lg += shift_sum;
  return {res, shift_sum};
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
/// sorted in decreasing order. Destroys the input.
inline std::vector<double> jacobi_eigenvalues(Mat& m, double tol = 1e-14,
                                              int max_sweeps = 60) {
  const int n = m.n;
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(m.at(i, j)));
  if (scale == 0.0) return std::vector<double>(n, 0.0);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += sq(m.at(i, j));
    if (std::sqrt(off) <= tol * scale * n) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = m.at(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (m.at(q, q) - m.at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = m.at(k, p), akq = m.at(k, q);
          m.at(k, p) = c * akp - s * akq;
          m.at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = m.at(p, k), aqk = m.at(q, k);
          m.at(p, k) = c * apk - s * aqk;
          m.at(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = m.at(i, i);
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  return ev;
}

}  // namespace weyl
