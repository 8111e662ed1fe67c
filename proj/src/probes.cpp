#include "beltrami/probes.hpp"

#include <cmath>

namespace beltrami {

ProbeSet::ProbeSet(int j_min, int j_max, int angles, int pairs, std::uint64_t seed)
    : j_min(j_min), j_max(j_max), angles(angles), pairs(pairs), seed(seed) {
  if (j_min > j_max) throw DomainError("ProbeSet: j_min must be <= j_max");
  if (j_min < 3) throw DomainError("ProbeSet: r_{j_min} must be <= 1/8 (j_min >= 3)");
  if (j_max > 40) throw DomainError("ProbeSet: r_{j_max} would underflow (j_max <= 40)");
  if (angles < 16) throw DomainError("ProbeSet: need at least 16 angles per radius");
  if (pairs < 1) throw DomainError("ProbeSet: need a positive pair budget");
}

double ProbeSet::radius(int j) const { return std::ldexp(1.0, -j); }

std::vector<double> ProbeSet::radii() const {
  std::vector<double> out;
  out.reserve(scale_count());
  for (int j = j_min; j <= j_max; ++j) out.push_back(radius(j));
  return out;
}

}  // namespace beltrami
