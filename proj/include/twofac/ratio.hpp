#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twofac/ensemble.hpp"
#include "twofac/mechanism.hpp"
#include "twofac/profile.hpp"

namespace twofac {

/// Slack allowed above a theoretical bound before it counts as violated.
inline constexpr double kBoundSlack = 1e-6;

/// SC / OPT. Returns 1 when both are zero and +inf when OPT = 0 < SC.
double ratio(const MechanismSpec& spec, const LocationProfile& p);

/// Proven approximation-ratio upper bound of the family for n agents:
///   leftright  n - 2
///   m1         n - 1
///   m2         max((1-a)k / 2a, ak / 2(1-a)) (n - 1)
///   m3         (1/eps - 1)(n - 1)
///   m4         (1-a)/a (n - 1)
///   m5         (1-a_min)/a_min (n - 1),  a_min = 1/2 - sum of c_i over i != t
///   fixture    +inf
double theoretical_bound(const MechanismSpec& spec, std::size_t n);

/// Hand-built instance families with known ratios.
enum class NamedFamily {
  Mech1Tight,          // (0, (1-delta) x (n-2), 1), dictator at 0: ratio n - 2
  LeftRightTight,      // (0, 0.5 x (n-2), 1): ratio n - 2
  ConsistencyWitness,  // (0, eps x .., (1-eps) x .., 1), dictator at the first eps agent
};

std::string_view named_family_name(NamedFamily f);
NamedFamily parse_named_family(std::string_view name);

struct FamilyInstance {
  LocationProfile profile;
  MechanismSpec spec;
};

/// Throws InvalidFamily for n < 5, InvalidEpsilon for a parameter outside (0, 1/2).
FamilyInstance family_instance(NamedFamily family, std::size_t n, double param);

/// Agent counts at eps and 1-eps in the consistency witness: n/2 - 1 each for
/// even n, (n-3)/2 and (n-1)/2 for odd n.
std::pair<std::size_t, std::size_t> witness_cluster_sizes(std::size_t n);

struct RatioRow {
  std::size_t instance_id = 0;
  std::string family;
  std::string params;
  std::size_t n = 0;
  double sc = 0.0;
  double opt = 0.0;
  double ratio = 0.0;
  double bound = 0.0;
};

struct RatioReport {
  std::size_t instances = 0;
  double max_ratio = 0.0;
  std::optional<LocationProfile> argmax_profile;
  std::optional<MechanismSpec> argmax_spec;
  /// Bound for the argmax instance.
  double bound = 0.0;
  bool bound_satisfied = true;
  /// Smallest bound - ratio over all instances (negative when violated).
  double min_slack = 0.0;
  std::vector<RatioRow> rows;
};

RatioRow evaluate_ratio(const Instance& inst);

/// Rows in instance order.
RatioReport evaluate_ratios(std::span<const Instance> instances, unsigned threads = 1);

/// Ensemble instances plus, for m1 and leftright, the matching tight family
/// at every n in [max(5, n_min), n_max] (ids continue after the ensemble).
RatioReport empirical_max_ratio(const MechanismTemplate& tmpl, const ProfileEnsemble& ensemble,
                                unsigned threads = 1, double tight_delta = 0.01);

/// Randomized restarts plus hill climbing on the ratio over profiles in [0,1].
/// `budget` counts ratio evaluations. Reports the best instance found; never
/// claims optimality.
RatioReport worst_case_search(const MechanismSpec& spec, std::size_t n, std::size_t budget, std::uint64_t seed);

}  // namespace twofac
