#pragma once

#include <cstdint>

#include "weyl/common.hpp"

namespace weyl {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}
}  // namespace detail

/// Counter-based per-path random stream (splitmix64). Streams derived from
/// (seed, a, b) are independent of worker count and execution order, which
/// is what makes parallel and serial runs bit-identical.
struct RngStream {
  std::uint64_t state = 0;
  double cached_gauss = 0.0;
  bool has_cached = false;

  std::uint64_t next_u64() {
    state += 0x9E3779B97F4A7C15ull;
    return detail::mix64(state);
  }

  /// uniform on (0, 1), never exactly 0 or 1
  double uniform() {
    return double(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }

  /// standard normal via Box-Muller (second value cached)
  double gauss() {
    if (has_cached) {
      has_cached = false;
      return cached_gauss;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * kPi * u2;
    cached_gauss = r * std::sin(a);
    has_cached = true;
    return r * std::cos(a);
  }
};

inline RngStream make_stream(std::uint64_t seed, std::uint64_t a,
                             std::uint64_t b = 0) {
  std::uint64_t h = seed;
  h = detail::mix64(h ^ (0x9E3779B97F4A7C15ull * (a + 1)));
  h = detail::mix64(h ^ (0xC2B2AE3D27D4EB4Full * (b + 1)));
  return RngStream{h, 0.0, false};
}

}  // namespace weyl
