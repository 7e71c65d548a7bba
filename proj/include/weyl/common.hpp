#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace weyl {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Coordinate vector in the ambient space (also used for chamber points).
using Vec = std::vector<double>;

enum class Family { A, B, D };

/// Bad input from the caller (dimensions, ranges, unsupported combinations).
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation that could not produce a trustworthy result.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const char* family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::D: return "D";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  if (s == "A" || s == "a") return Family::A;
  if (s == "B" || s == "b") return Family::B;
  if (s == "D" || s == "d") return Family::D;
  throw validation_error("unknown family '" + s + "' (expected A, B or D)");
}

/// Worker count for parallel sections; WEYL_THREADS overrides the
/// hardware default when set (results are bit-identical either way).
inline unsigned hardware_workers() {
  if (const char* env = std::getenv("WEYL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(std::min(v, 256L));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

inline double sq(double x) { return x * x; }

}  // namespace weyl
