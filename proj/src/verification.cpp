#include "twofac/verification.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "twofac/parallel.hpp"

namespace twofac {

namespace {

constexpr double kNudge = 1e-6;

// Switching thresholds (as proportions of L) that the dictator's position is
// compared against.
std::vector<double> thresholds(const MechanismSpec& spec, const LocationProfile& p, AgentId i) {
  switch (spec.family) {
    case Family::M1:
      return {0.5};
    case Family::M2:
      return {spec.a};
    case Family::M3:
      return {spec.epsilon, 1.0 - spec.epsilon};
    case Family::M4:
      return {spec.a, 1.0 - spec.a};
    case Family::M5: {
      const double a = mech5_threshold(p, *spec.dictator, spec.c);
      if (i == *spec.dictator) return {a};
      // Agent i's own contribution can land on either side of the dictator.
      const double own = p[i] <= p[*spec.dictator] ? -spec.c[i.index()] : spec.c[i.index()];
      return {a, a - own - spec.c[i.index()], a - own + spec.c[i.index()]};
    }
    default:
      return {};
  }
}

}  // namespace

void MisreportPlan::validate() const {
  if (steps < 2) throw std::invalid_argument("misreport grid needs at least 2 steps");
  if (lo && hi && !(*lo < *hi)) throw std::invalid_argument("misreport window must satisfy lo < hi");
}

std::vector<double> misreport_candidates(const LocationProfile& p, AgentId i, const MechanismSpec& spec,
                                         const MisreportPlan& plan) {
  plan.validate();
  const double width = p.degenerate() ? 1.0 : p.width();
  const double lo = plan.lo.value_or(p.min() - 2.0 * width);
  const double hi = plan.hi.value_or(p.max() + 2.0 * width);
  if (!(lo < hi)) throw std::invalid_argument("misreport window must satisfy lo < hi");

  std::vector<double> out;
  out.reserve(plan.steps + 8 * (p.size() + 8));
  for (std::size_t s = 0; s < plan.steps; ++s) {
    out.push_back(s + 1 == plan.steps ? hi : lo + (hi - lo) * static_cast<double>(s) / static_cast<double>(plan.steps - 1));
  }

  if (plan.structured) {
    std::vector<double> points;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j != i.index()) points.push_back(p.positions()[j]);
    }
    points.push_back(p.min());
    points.push_back(p.max());

    if (is_dictator_family(spec.family) && spec.dictator) {
      const double xt = p[*spec.dictator];
      points.push_back(xt);
      // Extremes of the other agents: the misreport may become the new extreme.
      double others_lo = p.max();
      double others_hi = p.min();
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (j == i.index()) continue;
        others_lo = std::min(others_lo, p.positions()[j]);
        others_hi = std::max(others_hi, p.positions()[j]);
      }
      for (double theta : thresholds(spec, p, i)) {
        points.push_back(p.min() + theta * width);
        if (i != *spec.dictator) {
          // Reports that move an extreme so the dictator lands on theta.
          if (theta > 0.0 && xt > others_lo) points.push_back(others_lo + (xt - others_lo) / theta);
          if (theta < 1.0 && xt < others_hi) points.push_back(others_hi - (others_hi - xt) / (1.0 - theta));
        } else if (others_hi > others_lo) {
          points.push_back(others_lo + theta * (others_hi - others_lo));
        }
      }
    }

    const FacilityPair honest = run(spec, p).facilities;
    points.push_back(honest.l1);
    points.push_back(honest.l2);

    for (double x : points) {
      if (!std::isfinite(x)) continue;
      out.push_back(x);
      out.push_back(x - kNudge * width);
      out.push_back(x + kNudge * width);
    }
  }

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MisreportOutcome evaluate_misreport(const MechanismSpec& spec, const LocationProfile& p, AgentId i,
                                    double misreport) {
  const double truth = p[i];
  return {cost(run(spec, p).facilities, truth), cost(run(spec, p.with(i, misreport)).facilities, truth)};
}

MisreportOutcome Violation::replay() const { return evaluate_misreport(spec, profile, agent, misreport); }

std::optional<Violation> check_agent_sp(const MechanismSpec& spec, const LocationProfile& p, AgentId i,
                                        const MisreportPlan& plan) {
  const double truth = p[i];
  const double honest = cost(run(spec, p).facilities, truth);
  std::optional<Violation> best;
  for (double x : misreport_candidates(p, i, spec, plan)) {
    if (x == truth) continue;
    const double deviant = cost(run(spec, p.with(i, x)).facilities, truth);
    if (deviant < honest - kSpTolerance && (!best || deviant < best->deviant_cost)) {
      best = Violation{0, p, spec, i, truth, x, honest, deviant};
    }
  }
  return best;
}

void VerificationReport::merge(const VerificationReport& other) {
  trials += other.trials;
  agent_checks += other.agent_checks;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  max_gain = std::max(max_gain, other.max_gain);
}

VerificationReport verify_instances(std::span<const Instance> instances, const MisreportPlan& plan,
                                    unsigned threads) {
  std::vector<VerificationReport> partial(instances.size());
  parallel_for(instances.size(), threads, [&](std::size_t k) {
    const Instance& inst = instances[k];
    VerificationReport& r = partial[k];
    r.trials = 1;
    for (std::size_t j = 1; j <= inst.profile.size(); ++j) {
      ++r.agent_checks;
      if (auto v = check_agent_sp(inst.spec, inst.profile, AgentId(j), plan)) {
        v->instance_id = inst.id;
        r.max_gain = std::max(r.max_gain, v->gain());
        r.violations.push_back(std::move(*v));
      }
    }
  });
  VerificationReport total;
  for (const auto& r : partial) total.merge(r);
  return total;
}

VerificationReport verify_mechanism(const MechanismTemplate& tmpl, const ProfileEnsemble& ensemble,
                                    const MisreportPlan& plan, unsigned threads) {
  const std::vector<Instance> instances = ensemble.instances(tmpl);
  return verify_instances(instances, plan, threads);
}

bool check_facility_retention(const MechanismSpec& spec, const LocationProfile& p, AgentId i) {
  const FacilityPair f = run(spec, p).facilities;
  for (double z : {f.l1, f.l2}) {
    const LocationProfile moved = p.with(i, z);
    const FacilityPair g = run(spec, moved).facilities;
    const double tol = kSpTolerance * std::max(1.0, moved.width());
    if (std::abs(g.l1 - z) > tol && std::abs(g.l2 - z) > tol) return false;
  }
  return true;
}

CharacterizationReport characterization_sweep(std::span<const Instance> instances, double tol) {
  CharacterizationReport report;
  for (const Instance& inst : instances) {
    ++report.checked;
    const FacilityPair f = run(inst.spec, inst.profile).facilities;
    if (!extreme_or_coincident(inst.profile, f, tol)) {
      report.failures.push_back({inst.id, inst.profile, inst.spec, f});
    }
  }
  return report;
}

CharacterizationReport characterization_sweep(const MechanismTemplate& tmpl, const ProfileEnsemble& ensemble,
                                              double tol) {
  const std::vector<Instance> instances = ensemble.instances(tmpl);
  return characterization_sweep(instances, tol);
}

}  // namespace twofac
