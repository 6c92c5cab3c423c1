// util.hpp — small shared helpers: portable RNG, infinity, window parsing.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace specgrowth {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// splitmix64: tiny deterministic RNG with a guaranteed cross-platform stream.
// std::uniform_real_distribution is implementation-defined, which would break
// byte-identical reports, so randomized starts and test instances use this.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in [lo,hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next_u64() % n : 0; }

 private:
  std::uint64_t state_;
};

// Closed window [lo, hi] on radii. Real-valued so it serves both integer and
// metric grids.
struct Window {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double r) const { return r >= lo - 1e-12 && r <= hi + 1e-12; }
};

}  // namespace specgrowth
