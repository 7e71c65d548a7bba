#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "weyl/common.hpp"
#include "weyl/root_system.hpp"

namespace testutil {

inline bool rel_close(double a, double b, double tol) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

// Small deterministic generator for test inputs (independent of the library RNG).
struct Lcg {
  std::uint64_t s;
  explicit Lcg(std::uint64_t seed) : s(seed ? seed : 1) {}
  std::uint64_t next() {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return s;
  }
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

// Random strictly interior chamber point with coordinate gaps >= min_gap.
inline weyl::Vec random_interior(const weyl::RootSystem& rs, Lcg& rng,
                                 double min_gap = 0.2, double max_gap = 1.5) {
  const int n = rs.rank_n;
  weyl::Vec x(n);
  double base = (rs.family == weyl::Family::A) ? rng.uniform(-2.0, 2.0)
                                               : rng.uniform(min_gap, max_gap);
  x[n - 1] = base;
  for (int i = n - 2; i >= 0; --i) x[i] = x[i + 1] + rng.uniform(min_gap, max_gap);
  if (rs.family == weyl::Family::D && rng.uniform() < 0.5 && n >= 2) {
    // exercise the D-specific region where the last coordinate is negative
    x[n - 1] = -rng.uniform(0.0, std::min(x[n - 2] * 0.9, max_gap));
  }
  return x;
}

}  // namespace testutil
