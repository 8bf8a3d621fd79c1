#include "twofac/ratio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "twofac/errors.hpp"
#include "twofac/opt.hpp"
#include "twofac/parallel.hpp"

namespace twofac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// When OPT is exactly zero the profile has at most two distinct positions and
// a mechanism that lands on both still accrues rounding error from forming
// l2 = x_t +- L. Social costs within a few ulps per agent count as zero.
double rounding_floor(const LocationProfile& p) {
  const double magnitude = std::max(std::abs(p.min()), std::abs(p.max()));
  return 16.0 * static_cast<double>(p.size()) * std::numeric_limits<double>::epsilon() * magnitude;
}

double ratio_of(double sc, double opt, const LocationProfile& p) {
  if (opt == 0.0) return sc <= rounding_floor(p) ? 1.0 : kInf;
  return sc / opt;
}

// Search positions live on a dyadic grid so that clusters never shrink into
// rounding noise and differences of positions are exact.
constexpr double kGrid = 0x1.0p24;

double quantize(double x) { return std::clamp(std::round(x * kGrid) / kGrid, 0.0, 1.0); }

std::vector<double> clustered_start(Rng& rng, std::size_t n) {
  const std::size_t clusters = rng.between(2, 3);
  std::vector<double> centers(clusters);
  for (double& c : centers) c = rng.uniform();
  const double spread = std::pow(10.0, -rng.uniform(1.0, 4.0));
  std::vector<double> xs(n);
  for (double& x : xs) x = quantize(centers[rng.index(clusters)] + spread * (rng.uniform() - 0.5));
  return xs;
}

void mutate(Rng& rng, std::vector<double>& xs) {
  const std::size_t n = xs.size();
  const std::size_t j = rng.index(n);
  switch (rng.index(4)) {
    case 0:  // resample one coordinate
      xs[j] = quantize(rng.uniform());
      break;
    case 1: {  // shrink or stretch the cluster around agent j
      const double radius = rng.uniform(0.0, 0.3);
      std::vector<std::size_t> members;
      double center = 0.0;
      for (std::size_t m = 0; m < n; ++m) {
        if (std::abs(xs[m] - xs[j]) <= radius) {
          members.push_back(m);
          center += xs[m];
        }
      }
      center /= static_cast<double>(members.size());
      const double factor = rng.uniform(0.0, 1.5);
      for (std::size_t m : members) xs[m] = quantize(center + factor * (xs[m] - center));
      break;
    }
    case 2:  // snap onto another agent
      xs[j] = xs[rng.index(n)];
      break;
    default: {  // local nudge
      const double step = std::pow(10.0, -rng.uniform(1.0, 4.0));
      xs[j] = quantize(xs[j] + (rng.coin(0.5) ? step : -step));
      break;
    }
  }
}

}  // namespace

double ratio(const MechanismSpec& spec, const LocationProfile& p) {
  const double sc = social_cost(run(spec, p).facilities, p);
  return ratio_of(sc, opt_two_facility(p).value, p);
}

double theoretical_bound(const MechanismSpec& spec, std::size_t n) {
  const double m = static_cast<double>(n) - 1.0;
  switch (spec.family) {
    case Family::LeftRight:
      return static_cast<double>(n) - 2.0;
    case Family::M1:
      return m;
    case Family::M2:
      return std::max((1.0 - spec.a) * spec.k / (2.0 * spec.a), spec.a * spec.k / (2.0 * (1.0 - spec.a))) * m;
    case Family::M3:
      return (1.0 / spec.epsilon - 1.0) * m;
    case Family::M4:
      return (1.0 - spec.a) / spec.a * m;
    case Family::M5: {
      double total = 0.0;
      for (std::size_t i = 0; i < spec.c.size(); ++i) {
        if (!spec.dictator || i != spec.dictator->index()) total += spec.c[i];
      }
      const double a_min = 0.5 - total;
      return (1.0 - a_min) / a_min * m;
    }
    case Family::Fixture:
      return kInf;
  }
  return kInf;
}

std::string_view named_family_name(NamedFamily f) {
  switch (f) {
    case NamedFamily::Mech1Tight: return "mech1_tight";
    case NamedFamily::LeftRightTight: return "leftright_tight";
    case NamedFamily::ConsistencyWitness: return "consistency_witness";
  }
  return "unknown";
}

NamedFamily parse_named_family(std::string_view name) {
  if (name == "mech1_tight") return NamedFamily::Mech1Tight;
  if (name == "leftright_tight") return NamedFamily::LeftRightTight;
  if (name == "consistency_witness") return NamedFamily::ConsistencyWitness;
  throw InvalidFamily("unknown instance family '" + std::string(name) + "'");
}

std::pair<std::size_t, std::size_t> witness_cluster_sizes(std::size_t n) {
  if (n % 2 == 0) return {n / 2 - 1, n / 2 - 1};
  return {(n - 3) / 2, (n - 1) / 2};
}

FamilyInstance family_instance(NamedFamily family, std::size_t n, double param) {
  if (n < 5) throw InvalidFamily("instance families need n >= 5, got " + std::to_string(n));
  std::vector<double> xs;
  xs.reserve(n);
  xs.push_back(0.0);
  switch (family) {
    case NamedFamily::Mech1Tight:
      if (!(param > 0.0 && param < 0.5)) throw InvalidEpsilon("delta must lie in (0, 1/2)");
      xs.insert(xs.end(), n - 2, 1.0 - param);
      xs.push_back(1.0);
      return {LocationProfile(std::move(xs)), MechanismSpec::mech1(AgentId(1))};
    case NamedFamily::LeftRightTight:
      xs.insert(xs.end(), n - 2, 0.5);
      xs.push_back(1.0);
      return {LocationProfile(std::move(xs)), MechanismSpec::left_right()};
    case NamedFamily::ConsistencyWitness: {
      if (!(param > 0.0 && param < 0.5)) throw InvalidEpsilon("epsilon must lie in (0, 1/2)");
      const auto [near_left, near_right] = witness_cluster_sizes(n);
      xs.insert(xs.end(), near_left, param);
      xs.insert(xs.end(), near_right, 1.0 - param);
      xs.push_back(1.0);
      return {LocationProfile(std::move(xs)), MechanismSpec::mech1(AgentId(2))};
    }
  }
  throw InvalidFamily("unhandled instance family");
}

RatioRow evaluate_ratio(const Instance& inst) {
  RatioRow row;
  row.instance_id = inst.id;
  row.family = std::string(family_name(inst.spec.family));
  row.params = inst.spec.params();
  row.n = inst.profile.size();
  row.sc = social_cost(run(inst.spec, inst.profile).facilities, inst.profile);
  row.opt = opt_two_facility(inst.profile).value;
  row.ratio = ratio_of(row.sc, row.opt, inst.profile);
  row.bound = theoretical_bound(inst.spec, row.n);
  return row;
}

RatioReport evaluate_ratios(std::span<const Instance> instances, unsigned threads) {
  RatioReport report;
  report.rows.resize(instances.size());
  parallel_for(instances.size(), threads, [&](std::size_t k) { report.rows[k] = evaluate_ratio(instances[k]); });

  report.instances = instances.size();
  report.min_slack = kInf;
  bool first = true;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const RatioRow& row = report.rows[k];
    if (first || row.ratio > report.max_ratio) {
      first = false;
      report.max_ratio = row.ratio;
      report.argmax_profile = instances[k].profile;
      report.argmax_spec = instances[k].spec;
      report.bound = row.bound;
    }
    const double slack = row.bound - row.ratio;
    report.min_slack = std::min(report.min_slack, std::isnan(slack) ? -kInf : slack);
    if (!(row.ratio <= row.bound + kBoundSlack)) report.bound_satisfied = false;
  }
  return report;
}

RatioReport empirical_max_ratio(const MechanismTemplate& tmpl, const ProfileEnsemble& ensemble, unsigned threads,
                                double tight_delta) {
  std::vector<Instance> instances = ensemble.instances(tmpl);
  std::optional<NamedFamily> tight;
  if (tmpl.family == Family::M1) tight = NamedFamily::Mech1Tight;
  if (tmpl.family == Family::LeftRight) tight = NamedFamily::LeftRightTight;
  if (tight) {
    std::size_t id = ensemble.count;
    for (std::size_t n = std::max<std::size_t>(ensemble.n_min, 5); n <= ensemble.n_max; ++n) {
      FamilyInstance fi = family_instance(*tight, n, tight_delta);
      instances.push_back({id++, std::move(fi.profile), std::move(fi.spec)});
    }
  }
  return evaluate_ratios(instances, threads);
}

RatioReport worst_case_search(const MechanismSpec& spec, std::size_t n, std::size_t budget, std::uint64_t seed) {
  spec.validate(n);
  Rng rng(splitmix64(seed));
  constexpr std::size_t kStallLimit = 200;

  std::size_t evaluations = 0;
  double best = -kInf;
  std::vector<double> best_xs;
  auto evaluate = [&](const std::vector<double>& xs) {
    ++evaluations;
    const double r = ratio(spec, LocationProfile(xs));
    if (r > best) {
      best = r;
      best_xs = xs;
    }
    return r;
  };

  while (evaluations < budget && best != kInf) {
    std::vector<double> current(n);
    if (rng.coin(0.5)) {
      for (double& x : current) x = quantize(rng.uniform());
    } else {
      current = clustered_start(rng, n);
    }
    double current_ratio = evaluate(current);
    std::size_t stall = 0;
    while (evaluations < budget && stall < kStallLimit && best != kInf) {
      std::vector<double> candidate = current;
      mutate(rng, candidate);
      const double r = evaluate(candidate);
      if (r > current_ratio + 1e-12) {
        stall = 0;
      } else {
        ++stall;
      }
      if (r >= current_ratio) {
        current = std::move(candidate);
        current_ratio = r;
      }
    }
  }

  Instance inst{0, LocationProfile(best_xs), spec};
  RatioReport report = evaluate_ratios(std::span<const Instance>(&inst, 1));
  report.instances = evaluations;
  return report;
}

}  // namespace twofac
