#pragma once

#include <cstddef>

#include "twofac/profile.hpp"

namespace twofac {

struct OptResult {
  double value = 0.0;
  FacilityPair facilities;
  /// Number of agents (in sorted order) served by the left facility.
  std::size_t split = 0;
};

/// Optimal two-facility social cost. The optimal clustering of points on a
/// line is contiguous in sorted order, so every split point is tried with a
/// lower-middle median per block, using prefix sums. O(n log n).
OptResult opt_two_facility(const LocationProfile& p);

inline constexpr std::size_t kBruteForceLimit = 14;

/// Test oracle: minimum social cost over every pair of facilities drawn from
/// agent positions (a pair may repeat a position). Throws InstanceTooLarge
/// above kBruteForceLimit agents.
double brute_force_opt(const LocationProfile& p);

}  // namespace twofac
