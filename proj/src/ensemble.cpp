#include "twofac/ensemble.hpp"

#include <algorithm>
#include <stdexcept>

#include "twofac/format.hpp"

namespace twofac {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng Rng::for_trial(std::uint64_t master_seed, std::uint64_t trial) {
  return Rng(splitmix64(splitmix64(master_seed) ^ trial));
}

LocationProfile random_profile(Rng& rng, std::size_t n, double snap_probability) {
  std::vector<double> xs(n);
  for (double& x : xs) x = rng.uniform();
  if (n >= 2 && rng.coin(snap_probability)) {
    const std::size_t lo = rng.index(n);
    std::size_t hi = rng.index(n - 1);
    if (hi >= lo) ++hi;
    xs[lo] = 0.0;
    xs[hi] = 1.0;
  }
  return LocationProfile(std::move(xs));
}

ThreeLocationProfile random_three_location(Rng& rng, std::size_t n) {
  if (n < 3) throw std::invalid_argument("three-location profile needs n >= 3");
  ThreeLocationProfile t;
  t.counts[0] = rng.between(1, n - 2);
  t.counts[1] = rng.between(1, n - t.counts[0] - 1);
  t.counts[2] = n - t.counts[0] - t.counts[1];
  for (double& y : t.positions) y = rng.uniform();
  if (rng.coin(0.25)) {
    const std::size_t from = rng.index(3);
    t.positions[(from + 1 + rng.index(2)) % 3] = t.positions[from];
  }
  return t;
}

MechanismSpec MechanismTemplate::bind(std::size_t n, Rng& rng) const {
  if (family == Family::LeftRight) return MechanismSpec::left_right();
  if (family == Family::Fixture) return MechanismSpec::fixture();
  const AgentId t = dictator ? *dictator : AgentId(rng.between(1, n));
  switch (family) {
    case Family::M1:
      return MechanismSpec::mech1(t);
    case Family::M2:
      return MechanismSpec::mech2(t, a, k);
    case Family::M3:
      return MechanismSpec::mech3(t, epsilon, middle);
    case Family::M4: {
      if (witness) return MechanismSpec::mech4(t, *witness, a);
      std::size_t i = rng.between(1, n - 1);
      if (i >= t.value()) ++i;
      return MechanismSpec::mech4(t, AgentId(i), a);
    }
    case Family::M5: {
      if (!c.empty()) return MechanismSpec::mech5(t, c);
      const double cap = 1.0 / (2.0 * static_cast<double>(n));
      std::vector<double> drawn(n);
      for (double& ci : drawn) ci = cap * rng.uniform_open();
      return MechanismSpec::mech5(t, std::move(drawn));
    }
    default:
      break;
  }
  throw std::logic_error("unhandled family in MechanismTemplate::bind");
}

std::string MechanismTemplate::label() const {
  std::string out(family_name(family));
  switch (family) {
    case Family::M2:
      out += "(a=" + format_double(a) + ",k=" + format_double(k) + ")";
      break;
    case Family::M3:
      out += "(eps=" + format_double(epsilon) + ",sel=" + std::string(selector_name(middle)) + ")";
      break;
    case Family::M4:
      out += "(a=" + format_double(a) + ")";
      break;
    default:
      break;
  }
  return out;
}

Instance ProfileEnsemble::instance(std::size_t id, const MechanismTemplate& tmpl) const {
  Rng rng = Rng::for_trial(seed, id);
  const std::size_t n = rng.between(n_min, n_max);
  LocationProfile profile = kind == EnsembleKind::Uniform
                                ? random_profile(rng, n, snap_probability)
                                : expand_three_location(random_three_location(rng, n));
  MechanismSpec spec = tmpl.bind(n, rng);
  return {id, std::move(profile), std::move(spec)};
}

std::vector<Instance> ProfileEnsemble::instances(const MechanismTemplate& tmpl) const {
  std::vector<Instance> out;
  out.reserve(count);
  for (std::size_t id = 0; id < count; ++id) out.push_back(instance(id, tmpl));
  return out;
}

}  // namespace twofac
