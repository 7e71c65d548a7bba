#pragma once

#include <map>

#include <boost/multiprecision/cpp_int.hpp>

#include "weyl/asymptotics.hpp"
#include "weyl/density.hpp"
#include "weyl/polynomial.hpp"
#include "weyl/quadrature.hpp"
#include "weyl/root_system.hpp"

namespace weyl::oracle {

using IVec = std::vector<int>;

/// Finite step set, closed under the acting group W.
struct StepSet {
  std::vector<IVec> steps;
};

namespace detail {

inline long long idot(const IVec& a, const IVec& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (long long)a[i] * b[i];
  return s;
}

inline IVec reflect(const std::vector<int>& root, const IVec& x) {
  long long aa = 0, ax = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    aa += (long long)root[i] * root[i];
    ax += (long long)root[i] * x[i];
  }
  // 2 (a,x) / (a,a) is integral for the classical roots ((a,a) is 1 or 2)
  const long long f = 2 * ax / aa;
  IVec y = x;
  for (std::size_t i = 0; i < x.size(); ++i) y[i] -= static_cast<int>(f * root[i]);
  return y;
}

inline bool strictly_inside(const RootSystem& rs, const IVec& x) {
  for (const auto& a : rs.simple_roots)
    if (idot(a, x) <= 0) return false;
  return true;
}

}  // namespace detail

/// Builds a step set, validating W-symmetry (closure under the simple
/// reflections, which generate W).
inline StepSet make_step_set(const RootSystem& rs, std::vector<IVec> steps) {
  for (const auto& s : steps)
    if (static_cast<int>(s.size()) != rs.rank_n)
      throw validation_error("step dimension mismatch");
  auto contains = [&steps](const IVec& v) {
    for (const auto& s : steps)
      if (s == v) return true;
    return false;
  };
  for (const auto& a : rs.simple_roots)
    for (const auto& s : steps)
      if (!contains(detail::reflect(a, s)))
        throw validation_error("step set is not symmetric under the group");
  return StepSet{std::move(steps)};
}

/// Unit steps +-e_i; W-symmetric for all three families.
inline StepSet unit_step_set(const RootSystem& rs) {
  std::vector<IVec> steps;
  for (int i = 0; i < rs.rank_n; ++i) {
    IVec s(rs.rank_n, 0);
    s[i] = 1;
    steps.push_back(s);
    s[i] = -1;
    steps.push_back(s);
  }
  return make_step_set(rs, std::move(steps));
}

/// A walk type is reflectable when no step can jump a reflecting
/// hyperplane without landing on it: |(alpha, s)| <= 1 for every
/// positive root and step (lattice values of (alpha, .) are integers).
inline bool is_reflectable(const RootSystem& rs, const StepSet& ss) {
  for (const auto& a : rs.positive_roots)
    for (const auto& s : ss.steps)
      if (std::abs(detail::idot(a, s)) > 1) return false;
  return true;
}

inline constexpr int kMaxWalkLength = 30;

/// Exact count of k-step walks start -> end staying strictly inside the
/// open chamber at every step.
inline BigInt lattice_walk_dp(const RootSystem& rs, const IVec& start,
                              const IVec& end, int k, const StepSet& ss) {
  if (k < 0 || k > kMaxWalkLength)
    throw validation_error("walk length capped at " + std::to_string(kMaxWalkLength));
  if (!detail::strictly_inside(rs, start) || !detail::strictly_inside(rs, end))
    return BigInt(0);
  std::map<IVec, BigInt> layer{{start, BigInt(1)}};
  for (int step = 0; step < k; ++step) {
    std::map<IVec, BigInt> next;
    for (const auto& [pos, cnt] : layer)
      for (const auto& s : ss.steps) {
        IVec q = pos;
        for (std::size_t i = 0; i < q.size(); ++i) q[i] += s[i];
        if (detail::strictly_inside(rs, q)) next[q] += cnt;
      }
    layer.swap(next);
  }
  auto it = layer.find(end);
  return it == layer.end() ? BigInt(0) : it->second;
}

/// Exact count of unconstrained k-step walks start -> end.
inline BigInt unconstrained_walk_count(const IVec& start, const IVec& end, int k,
                                       const StepSet& ss) {
  std::map<IVec, BigInt> layer{{start, BigInt(1)}};
  for (int step = 0; step < k; ++step) {
    std::map<IVec, BigInt> next;
    for (const auto& [pos, cnt] : layer)
      for (const auto& s : ss.steps) {
        IVec q = pos;
        for (std::size_t i = 0; i < q.size(); ++i) q[i] += s[i];
        next[q] += cnt;
      }
    layer.swap(next);
  }
  auto it = layer.find(end);
  return it == layer.end() ? BigInt(0) : it->second;
}

/// Signed reflection count  sum_w sgn(w) #unconstrained(w(start) -> end);
/// equals lattice_walk_dp exactly for reflectable W-symmetric step sets.
inline BigInt lattice_walk_reflection(const RootSystem& rs, const IVec& start,
                                      const IVec& end, int k, const StepSet& ss) {
  if (k < 0 || k > kMaxWalkLength)
    throw validation_error("walk length capped at " + std::to_string(kMaxWalkLength));
  if (!is_reflectable(rs, ss))
    throw validation_error("step set is not reflectable: a step jumps a wall");
  BigInt total = 0;
  for_each_group_element(rs, [&](const GroupElement& w) {
    IVec ws(start.size());
    for (std::size_t i = 0; i < start.size(); ++i)
      ws[i] = w.sign[i] * start[w.perm[i]];
    total += BigInt(w.det) * unconstrained_walk_count(ws, end, k, ss);
  });
  return total;
}

/// Exact h at an integer point.
inline BigInt h_exact(const RootSystem& rs, const IVec& x) {
  BigInt p = 1;
  for (const auto& a : rs.positive_roots) p *= BigInt(detail::idot(a, x));
  return p;
}

struct HarmonicContinuousReport {
  bool symbolic_checked = false;  // false when the expansion hit the term cap
  bool symbolic_zero = false;
  std::size_t h_terms = 0;
  double max_fd_residual = 0.0;  // relative second-difference residual
  bool fd_pass = false;
  bool pass() const { return (symbolic_zero || !symbolic_checked) && fd_pass; }
};

/// Verifies Laplacian(h) == 0: exactly, as a polynomial identity, and
/// numerically by central second differences at the sample points.
inline HarmonicContinuousReport check_harmonic_continuous(
    const RootSystem& rs, const std::vector<Vec>& sample_points,
    double tol = 1e-6, std::size_t max_terms = 500000) {
  HarmonicContinuousReport rep;
  try {
    Poly h = h_polynomial(rs, max_terms);
    rep.h_terms = h.term_count();
    rep.symbolic_zero = laplacian(h).is_zero();
    rep.symbolic_checked = true;
  } catch (const numeric_error&) {
    rep.symbolic_checked = false;  // fall back to finite differences only
  }
  const double hstep = 1.0 / 64.0;
  rep.fd_pass = true;
  for (const auto& x : sample_points) {
    double stencil_sum = 0.0, stencil_mag = 0.0;
    Vec y = x;
    for (int i = 0; i < rs.rank_n; ++i) {
      y[i] = x[i] + hstep;
      const double hp = h_product(rs, y);
      y[i] = x[i] - hstep;
      const double hm = h_product(rs, y);
      y[i] = x[i];
      const double h0 = h_product(rs, x);
      stencil_sum += hp - 2.0 * h0 + hm;
      stencil_mag += std::abs(hp) + 2.0 * std::abs(h0) + std::abs(hm);
    }
    const double rel = std::abs(stencil_sum) / (stencil_mag + 1e-300);
    rep.max_fd_residual = std::max(rep.max_fd_residual, rel);
    if (rel > tol) rep.fd_pass = false;
  }
  return rep;
}

struct HarmonicDiscreteReport {
  bool exact_zero = false;
  std::size_t n_points = 0;
  bool pass() const { return exact_zero; }
};

/// Asserts the discrete-Laplacian identity  sum_s h(x+s) = |S| h(x)
/// exactly (integer arithmetic) at every sample point.
inline HarmonicDiscreteReport check_harmonic_discrete(
    const RootSystem& rs, const StepSet& ss, const std::vector<IVec>& points) {
  // revalidate symmetry so a hand-built step set cannot slip through
  make_step_set(rs, ss.steps);
  HarmonicDiscreteReport rep;
  rep.n_points = points.size();
  rep.exact_zero = true;
  for (const auto& x : points) {
    BigInt sum = 0;
    for (const auto& s : ss.steps) {
      IVec q = x;
      for (std::size_t i = 0; i < q.size(); ++i) q[i] += s[i];
      sum += h_exact(rs, q);
    }
    if (sum != BigInt(ss.steps.size()) * h_exact(rs, x)) rep.exact_zero = false;
  }
  return rep;
}

/// Survival probability by chamber quadrature of the absorbing density,
/// truncated at radius 12 sqrt(t) + |eta|.
inline double quadrature_survival(const RootSystem& rs, const Vec& eta, double t,
                                  double tol = 1e-8) {
  if (rs.rank_n > 3)
    throw validation_error(
        "quadrature_survival supports n <= 3; use Monte Carlo for larger ranks");
  if (!(t > 0.0)) throw validation_error("quadrature_survival requires t > 0");
  double amax = 0.0, lo = 0.0, hi = 0.0;
  for (double v : eta) amax = std::max(amax, std::abs(v));
  const double R = 12.0 * std::sqrt(t) + amax;
  if (rs.family == Family::A) {
    double mn = eta[0], mx = eta[0];
    for (double v : eta) {
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    lo = mn - R;
    hi = mx + R;
  } else {
    lo = 0.0;
    hi = R;
  }
  return chamber_integrate(
      rs, [&](const Vec& lam) { return determinant_density(rs, eta, lam, t); },
      lo, hi, tol);
}

}  // namespace weyl::oracle
