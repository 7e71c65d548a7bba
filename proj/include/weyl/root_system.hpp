#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>

#include "weyl/common.hpp"

namespace weyl {

/// Signed permutation acting on coordinates: (w x)_i = sign[i] * x[perm[i]].
struct GroupElement {
  std::vector<int> perm;
  std::vector<std::int8_t> sign;
  int det = 1;  // determinant of the orthogonal action

  bool operator==(const GroupElement& o) const {
    return perm == o.perm && sign == o.sign;
  }
};

/// One of the classical families A_{n-1}, B_n, D_n acting on R^n.
///
/// Roots are stored unnormalized (e_i - e_j, e_i + e_j, e_i) so that
/// drift formulas sum alpha / (alpha, x) directly.
struct RootSystem {
  Family family = Family::A;
  int rank_n = 0;  // ambient dimension of the coordinates
  std::vector<std::vector<int>> positive_roots;
  std::vector<std::vector<int>> simple_roots;
  long long num_positive_roots_m = 0;
  long long group_order = 0;
  double delta_prime_scale = 1.0;  // (2*pi)^m
};

inline constexpr long long kDefaultGroupCap = 20'000'000;

namespace detail {

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw validation_error("group order overflows 64-bit integer; rank too large");
  return r;
}

inline double dot(const std::vector<int>& root, const Vec& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < root.size(); ++i) s += root[i] * x[i];
  return s;
}

inline double norm(const std::vector<int>& root) {
  double s = 0.0;
  for (int c : root) s += double(c) * c;
  return std::sqrt(s);
}

inline int perm_sign(const std::vector<int>& p) {
  // inversion count; fine at these ranks
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

}  // namespace detail

inline RootSystem build_root_system(Family family, int n) {
  if (n < 1) throw validation_error("rank must be >= 1");
  if (family == Family::D && n < 2)
    throw validation_error("family D requires n >= 2");
  RootSystem rs;
  rs.family = family;
  rs.rank_n = n;
  auto e = [n](int i, int ci, int j = -1, int cj = 0) {
    std::vector<int> v(n, 0);
    v[i] = ci;
    if (j >= 0) v[j] = cj;
    return v;
  };
  switch (family) {
    case Family::A:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) rs.positive_roots.push_back(e(i, 1, j, -1));
      for (int i = 0; i + 1 < n; ++i) rs.simple_roots.push_back(e(i, 1, i + 1, -1));
      rs.group_order = 1;
      for (int k = 2; k <= n; ++k) rs.group_order = detail::checked_mul(rs.group_order, k);
      break;
    case Family::B:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          rs.positive_roots.push_back(e(i, 1, j, -1));
          rs.positive_roots.push_back(e(i, 1, j, 1));
        }
      for (int i = 0; i < n; ++i) rs.positive_roots.push_back(e(i, 1));
      for (int i = 0; i + 1 < n; ++i) rs.simple_roots.push_back(e(i, 1, i + 1, -1));
      rs.simple_roots.push_back(e(n - 1, 1));
      rs.group_order = 1;
      for (int k = 2; k <= n; ++k) rs.group_order = detail::checked_mul(rs.group_order, k);
      for (int k = 0; k < n; ++k) rs.group_order = detail::checked_mul(rs.group_order, 2);
      break;
    case Family::D:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          rs.positive_roots.push_back(e(i, 1, j, -1));
          rs.positive_roots.push_back(e(i, 1, j, 1));
        }
      for (int i = 0; i + 1 < n; ++i) rs.simple_roots.push_back(e(i, 1, i + 1, -1));
      rs.simple_roots.push_back(e(n - 2, 1, n - 1, 1));
      rs.group_order = 1;
      for (int k = 2; k <= n; ++k) rs.group_order = detail::checked_mul(rs.group_order, k);
      for (int k = 0; k + 1 < n; ++k) rs.group_order = detail::checked_mul(rs.group_order, 2);
      break;
  }
  rs.num_positive_roots_m = static_cast<long long>(rs.positive_roots.size());
  rs.delta_prime_scale = std::pow(2.0 * kPi, double(rs.num_positive_roots_m));
  return rs;
}

inline GroupElement identity_element(int n) {
  GroupElement w;
  w.perm.resize(n);
  std::iota(w.perm.begin(), w.perm.end(), 0);
  w.sign.assign(n, 1);
  w.det = 1;
  return w;
}

/// w(x); dimensions must match.
inline Vec apply_element(const GroupElement& w, const Vec& x) {
  if (w.perm.size() != x.size()) throw validation_error("dimension mismatch in apply_element");
  Vec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = w.sign[i] * x[w.perm[i]];
  return y;
}

/// compose(a, b) acts as x -> a(b(x)).
inline GroupElement compose(const GroupElement& a, const GroupElement& b) {
  const std::size_t n = a.perm.size();
  GroupElement c;
  c.perm.resize(n);
  c.sign.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.perm[i] = b.perm[a.perm[i]];
    c.sign[i] = static_cast<std::int8_t>(a.sign[i] * b.sign[a.perm[i]]);
  }
  c.det = a.det * b.det;
  return c;
}

inline GroupElement inverse(const GroupElement& w) {
  const std::size_t n = w.perm.size();
  GroupElement v;
  v.perm.resize(n);
  v.sign.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    v.perm[w.perm[i]] = static_cast<int>(i);
    v.sign[w.perm[i]] = w.sign[i];
  }
  v.det = w.det;
  return v;
}

/// Visits every group element exactly once (identity first).
/// Throws when the group order exceeds `cap`.
inline void for_each_group_element(const RootSystem& rs,
                                   const std::function<void(const GroupElement&)>& fn,
                                   long long cap = kDefaultGroupCap) {
  if (rs.group_order > cap)
    throw validation_error(
        "group order " + std::to_string(rs.group_order) +
        " exceeds enumeration cap; use the determinant specializations instead");
  const int n = rs.rank_n;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  GroupElement w;
  w.perm.resize(n);
  w.sign.resize(n);
  do {
    const int psign = detail::perm_sign(perm);
    const unsigned long long nmasks =
        (rs.family == Family::A) ? 1ull : (1ull << n);
    for (unsigned long long mask = 0; mask < nmasks; ++mask) {
      const int flips = __builtin_popcountll(mask);
      if (rs.family == Family::D && (flips % 2) != 0) continue;
      w.perm = perm;
      int esign = 1;
      for (int i = 0; i < n; ++i) {
        const bool neg = (mask >> i) & 1u;
        w.sign[i] = neg ? -1 : 1;
        if (neg) esign = -esign;
      }
      w.det = psign * esign;
      fn(w);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

inline std::vector<GroupElement> enumerate_group(const RootSystem& rs,
                                                 long long cap = kDefaultGroupCap) {
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(std::min<long long>(rs.group_order, cap)));
  for_each_group_element(rs, [&](const GroupElement& w) { out.push_back(w); }, cap);
  return out;
}

/// Closed-chamber membership: (alpha, x) >= 0 for all simple roots
/// (> 0 when strict).
inline bool chamber_contains(const RootSystem& rs, const Vec& x, bool strict = false) {
  if (static_cast<int>(x.size()) != rs.rank_n)
    throw validation_error("dimension mismatch in chamber_contains");
  for (const auto& a : rs.simple_roots) {
    const double d = detail::dot(a, x);
    if (strict ? (d <= 0.0) : (d < 0.0)) return false;
  }
  return true;
}

/// Product of the positive roots: h(x) = prod_{alpha>0} (alpha, x).
/// Antisymmetric: h(w x) = det(w) h(x); vanishes exactly on the walls.
inline double h_product(const RootSystem& rs, const Vec& x) {
  if (static_cast<int>(x.size()) != rs.rank_n)
    throw validation_error("dimension mismatch in h_product");
  double p = 1.0;
  for (const auto& a : rs.positive_roots) p *= detail::dot(a, x);
  return p;
}

/// Distance from x to the nearest reflecting hyperplane.
inline double min_wall_distance(const RootSystem& rs, const Vec& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : rs.positive_roots)
    best = std::min(best, std::abs(detail::dot(a, x)) / detail::norm(a));
  return best;
}

/// True when x lies within `tol` of some reflecting hyperplane.
inline bool on_wall(const RootSystem& rs, const Vec& x, double tol = 1e-12) {
  for (const auto& a : rs.positive_roots)
    if (std::abs(detail::dot(a, x)) <= tol) return true;
  return false;
}

/// #{w in W : w(x) = x}, computed by enumeration only when x sits on a wall
/// (within absolute tolerance); interior points have trivial stabilizer.
inline long long stabilizer_size(const RootSystem& rs, const Vec& x, double tol = 1e-12) {
  if (!on_wall(rs, x, tol)) return 1;
  long long count = 0;
  for_each_group_element(rs, [&](const GroupElement& w) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (std::abs(w.sign[i] * x[w.perm[i]] - x[i]) > tol) return;
    ++count;
  });
  return count;
}

/// Canonical chamber representative of the W-orbit of x.
/// Returns the representative and whether x had to be moved.
inline std::pair<Vec, bool> canonicalize(const RootSystem& rs, const Vec& x) {
  Vec y = x;
  switch (rs.family) {
    case Family::A:
      std::sort(y.begin(), y.end(), std::greater<double>());
      break;
    case Family::B:
      for (auto& v : y) v = std::abs(v);
      std::sort(y.begin(), y.end(), std::greater<double>());
      break;
    case Family::D: {
      int negs = 0;
      for (auto& v : y) {
        if (v < 0.0) ++negs;
        v = std::abs(v);
      }
      std::sort(y.begin(), y.end(), std::greater<double>());
      if (negs % 2 != 0) y.back() = -y.back();
      break;
    }
  }
  bool changed = false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) changed = true;
  return {y, changed};
}

/// A strictly interior integer point, handy as a generic test/start position.
inline Vec interior_point(const RootSystem& rs) {
  Vec x(rs.rank_n);
  for (int i = 0; i < rs.rank_n; ++i) x[i] = double(rs.rank_n - i);
  return x;
}

}  // namespace weyl
