#pragma once

#include <functional>

#include "weyl/common.hpp"
#include "weyl/root_system.hpp"

namespace weyl {

namespace detail {

// Gauss(7)/Kronrod(15) nodes and weights on [-1, 1].
inline constexpr double kGK15X[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kGK15WK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kGK15WG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
  double integral;
  double error;
};

template <class F>
PanelResult gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double resk = 0.0, resg = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double x = h * kGK15X[i];
    const double f1 = f(c - x);
    const double s = (i == 7) ? f1 : (f1 + f(c + x));
    resk += kGK15WK[i] * s;
    if (i % 2 == 1) resg += kGK15WG[i / 2] * s;  // odd indices carry the G7 rule
  }
  return {resk * h, std::abs(resk - resg) * h};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b] to absolute
/// tolerance tol.
template <class F>
double integrate_1d(const F& f, double a, double b, double tol = 1e-10,
                    int max_depth = 48) {
  struct Rec {
    const F& f;
    double tol_floor;
    double run(double a, double b, double tol, int depth) const {
      auto r = detail::gk15(f, a, b);
      if (r.error <= std::max(tol, tol_floor) || depth <= 0) return r.integral;
      const double m = 0.5 * (a + b);
      return run(a, m, 0.5 * tol, depth - 1) + run(m, b, 0.5 * tol, depth - 1);
    }
  };
  if (!(b > a)) return 0.0;
  Rec rec{f, 1e-300};
  return rec.run(a, b, tol, max_depth);
}

namespace detail {

// Nested integration over the truncated chamber with dependent limits:
//   A: x_n in [lo, hi],  x_i in [x_{i+1}, hi]
//   B: x_n in [0, hi],   x_i in [x_{i+1}, hi]
//   D: x_n in [-hi, hi], x_{n-1} in [|x_n|, hi], x_i in [x_{i+1}, hi]
template <class F>
class ChamberIntegrator {
 public:
  ChamberIntegrator(const RootSystem& rs, const F& f, double lo, double hi,
                    double tol)
      : rs_(rs), f_(f), lo_(lo), hi_(hi), tol_(tol) {}

  double run() {
    Vec x(rs_.rank_n);
    return integrate_dim(rs_.rank_n - 1, x, tol_);
  }

 private:
  double lower_limit(int dim, const Vec& x) const {
    const int n = rs_.rank_n;
    if (dim == n - 1) {
      switch (rs_.family) {
        case Family::A: return lo_;
        case Family::B: return 0.0;
        case Family::D: return -hi_;
      }
    }
    if (rs_.family == Family::D && dim == n - 2) return std::abs(x[n - 1]);
    return x[dim + 1];
  }

  double integrate_dim(int dim, Vec& x, double tol) const {
    const double a = lower_limit(dim, x);
    const double b = hi_;
    if (!(b > a)) return 0.0;
    const double inner_tol =
        std::max(tol / (4.0 * (b - a)), 1e-15 * tol_ / (b - a));
    auto g = [&](double v) {
      x[dim] = v;
      if (dim == 0) return f_(x);
      return integrate_dim(dim - 1, x, inner_tol);
    };
    return integrate_1d(g, a, b, tol);
  }

  const RootSystem& rs_;
  const F& f_;
  double lo_, hi_, tol_;
};

}  // namespace detail

/// Integral of f over the chamber, truncated to the box [lo, hi] per
/// coordinate (lo is only relevant for the A family, whose chamber is
/// unbounded below).
template <class F>
double chamber_integrate(const RootSystem& rs, const F& f, double lo, double hi,
                         double tol = 1e-8) {
  detail::ChamberIntegrator<F> ci(rs, f, lo, hi, tol);
  return ci.run();
}

}  // namespace weyl
