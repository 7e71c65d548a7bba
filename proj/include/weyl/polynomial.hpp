#pragma once

#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "weyl/common.hpp"
#include "weyl/root_system.hpp"

namespace weyl {

/// Sparse multivariate polynomial with integer coefficients;
/// monomials keyed by their exponent vectors.
struct Poly {
  int nvars = 0;
  std::map<std::vector<int>, long long> terms;

  bool is_zero() const { return terms.empty(); }
  std::size_t term_count() const { return terms.size(); }

  static Poly constant(int nvars, long long c) {
    Poly p;
    p.nvars = nvars;
    if (c != 0) p.terms[std::vector<int>(nvars, 0)] = c;
    return p;
  }

  static Poly linear(const std::vector<int>& coeffs) {
    Poly p;
    p.nvars = static_cast<int>(coeffs.size());
    for (int i = 0; i < p.nvars; ++i) {
      if (coeffs[i] == 0) continue;
      std::vector<int> e(p.nvars, 0);
      e[i] = 1;
      p.terms[e] = coeffs[i];
    }
    return p;
  }

  void add_term(const std::vector<int>& e, long long c) {
    if (c == 0) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
      terms[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
};

inline Poly poly_mul(const Poly& a, const Poly& b, std::size_t max_terms = 500000) {
  Poly r;
  r.nvars = a.nvars;
  std::vector<int> e(a.nvars);
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      for (int i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
      if (r.terms.size() > max_terms)
        throw numeric_error("polynomial term cap exceeded");
    }
  return r;
}

/// sum_i d^2/dx_i^2.
inline Poly laplacian(const Poly& p) {
  Poly r;
  r.nvars = p.nvars;
  for (const auto& [e, c] : p.terms)
    for (int i = 0; i < p.nvars; ++i) {
      if (e[i] < 2) continue;
      std::vector<int> d = e;
      d[i] -= 2;
      r.add_term(d, c * e[i] * (e[i] - 1));
    }
  return r;
}

template <class T>
T poly_eval(const Poly& p, const std::vector<T>& x) {
  T total(0);
  for (const auto& [e, c] : p.terms) {
    T term(c);
    for (int i = 0; i < p.nvars; ++i)
      for (int k = 0; k < e[i]; ++k) term *= x[i];
    total += term;
  }
  return total;
}

/// h as an exact polynomial: the product of the positive roots.
inline Poly h_polynomial(const RootSystem& rs, std::size_t max_terms = 500000) {
  Poly p = Poly::constant(rs.rank_n, 1);
  for (const auto& a : rs.positive_roots)
    p = poly_mul(p, Poly::linear(a), max_terms);
  return p;
}

}  // namespace weyl
