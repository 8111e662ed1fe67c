#pragma once

#include <cstdint>
#include <vector>

#include "beltrami/types.hpp"

namespace beltrami {

/// Deterministic 64-bit generator (splitmix64).  Used instead of the
/// standard distributions so that emitted tables are byte-identical for a
/// given seed regardless of platform or standard library.
struct SplitMix64 {
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, 1).
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

/// Dyadic probe radii r_j = 2^-j for j_min <= j <= j_max with a fixed number
/// of angles per radius.  Probes are kept at r <= 1/8 so they stay inside the
/// chi == 1 plateau of the cutoff.
struct ProbeSet {
  ProbeSet(int j_min, int j_max, int angles = 16, int pairs = 256,
           std::uint64_t seed = 0x5eedULL);

  int j_min;
  int j_max;
  int angles;
  int pairs;
  std::uint64_t seed;

  int scale_count() const { return j_max - j_min + 1; }
  double radius(int j) const;        // 2^-j
  std::vector<double> radii() const; // decreasing, j = j_min..j_max
};

}  // namespace beltrami
