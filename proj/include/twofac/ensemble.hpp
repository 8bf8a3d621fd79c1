#pragma once

// Seeded instance generation.
//
// Randomness is std::mt19937_64, whose output sequence is fixed by the C++
// standard, seeded per trial with splitmix64(master_seed, trial_index).
// Doubles are built from the top 53 bits of a draw and integers by modulo
// reduction, so a seed produces the same instances on every platform.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "twofac/mechanism.hpp"
#include "twofac/profile.hpp"

namespace twofac {

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for one trial of a seeded run.
  static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform in (0, 1).
  double uniform_open() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform in [0, n).
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  /// Uniform in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + index(hi - lo + 1); }
  bool coin(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Uniform positions in [0,1]; with probability snap_probability two distinct
/// agents are moved to exactly 0 and 1.
LocationProfile random_profile(Rng& rng, std::size_t n, double snap_probability = 0.5);

/// Three blocks of positive size summing to n, each at a uniform position.
/// With probability 1/4 two blocks share a position.
ThreeLocationProfile random_three_location(Rng& rng, std::size_t n);

/// Mechanism family and fixed parameters. Agent ids (dictator, witness) and
/// Mechanism 5's c-vector are drawn per instance unless pinned here.
struct MechanismTemplate {
  Family family = Family::LeftRight;
  double a = 0.5;
  double k = 2.0;
  double epsilon = 0.25;
  MiddleSelector middle = MiddleSelector::ThreeL;
  std::optional<AgentId> dictator;
  std::optional<AgentId> witness;
  std::vector<double> c;

  MechanismSpec bind(std::size_t n, Rng& rng) const;
  std::string label() const;
};

enum class EnsembleKind { Uniform, ThreeLocation };

struct Instance {
  std::size_t id = 0;
  LocationProfile profile;
  MechanismSpec spec;
};

struct ProfileEnsemble {
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  std::size_t n_min = 5;
  std::size_t n_max = 12;
  EnsembleKind kind = EnsembleKind::Uniform;
  double snap_probability = 0.5;

  /// Instance `id` depends only on (seed, id, template).
  Instance instance(std::size_t id, const MechanismTemplate& tmpl) const;
  std::vector<Instance> instances(const MechanismTemplate& tmpl) const;
};

}  // namespace twofac
