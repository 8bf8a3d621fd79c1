#include "twofac/prediction.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "twofac/ensemble.hpp"
#include "twofac/errors.hpp"
#include "twofac/opt.hpp"
#include "twofac/ratio.hpp"

namespace twofac {

MechanismOutput run_predicted(const PredictedMechanismSpec& spec, const LocationProfile& reported) {
  if (spec.prediction.size() != reported.size()) {
    throw InvalidSpec("prediction has " + std::to_string(spec.prediction.size()) + " agents, report has " +
                      std::to_string(reported.size()));
  }
  switch (spec.usage) {
    case PredictionUsage::Ignore:
      return run(spec.base, reported);
  }
  throw InvalidSpec("unhandled prediction usage");
}

std::vector<PredictionInstance> accurate_predictions(std::span<const LocationProfile> truths) {
  std::vector<PredictionInstance> out;
  out.reserve(truths.size());
  for (const auto& t : truths) out.push_back({t, t});
  return out;
}

std::vector<PredictionInstance> adversarial_predictions(std::span<const LocationProfile> truths,
                                                        std::uint64_t seed) {
  std::vector<PredictionInstance> out;
  out.reserve(truths.size());
  for (std::size_t k = 0; k < truths.size(); ++k) {
    Rng rng = Rng::for_trial(seed, k);
    out.push_back({truths[k], random_profile(rng, truths[k].size(), 0.0)});
  }
  return out;
}

ConsistencyReport eval_consistency(const MechanismSpec& base, PredictionUsage usage,
                                   std::span<const PredictionInstance> accurate,
                                   std::span<const PredictionInstance> adversarial) {
  auto max_ratio = [&](std::span<const PredictionInstance> set) {
    double best = 0.0;
    for (const auto& inst : set) {
      const PredictedMechanismSpec spec{base, inst.prediction, usage};
      const double sc = social_cost(run_predicted(spec, inst.truth).facilities, inst.truth);
      const double opt = opt_two_facility(inst.truth).value;
      // Same zero handling as ratio(): both zero is a perfect instance.
      const double r = opt > 0.0 ? sc / opt : (sc > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
      best = std::max(best, r);
    }
    return best;
  };
  ConsistencyReport report;
  report.consistency_estimate = max_ratio(accurate);
  report.robustness_estimate = max_ratio(adversarial);
  for (const auto& inst : accurate) {
    report.lower_bound_value = std::max(report.lower_bound_value, static_cast<double>(inst.truth.size()) / 4.0);
  }
  return report;
}

Witness lower_bound_witness(std::size_t n, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.25)) throw InvalidEpsilon("epsilon must lie in (0, 1/4)");
  FamilyInstance fi = family_instance(NamedFamily::ConsistencyWitness, n, epsilon);
  return {std::move(fi.profile), n, epsilon, static_cast<double>(n) / 4.0};
}

bool witness_cost_floor_holds(const Witness& w, const FacilityPair& f) {
  if (!extreme_or_coincident(w.profile, f, 0.0)) {
    throw std::invalid_argument("facility pair has neither an extreme nor a coincident facility");
  }
  return social_cost(f, w.profile) >= static_cast<double>(w.n) / 2.0 * w.epsilon;
}

std::vector<MechanismSpec> witness_sweep_specs(std::size_t n) {
  std::vector<MechanismSpec> specs;
  specs.push_back(MechanismSpec::left_right());
  const double cap = 1.0 / (2.0 * static_cast<double>(n));
  for (std::size_t t = 1; t <= n; ++t) {
    const AgentId dictator(t);
    specs.push_back(MechanismSpec::mech1(dictator));
    for (double a : {0.2, 0.5, 0.8}) {
      for (double k : {2.0, 3.0}) specs.push_back(MechanismSpec::mech2(dictator, a, k));
    }
    for (double eps : {0.1, 0.25, 0.49}) {
      for (auto sel : {MiddleSelector::ThreeL, MiddleSelector::MinusTwoL}) {
        specs.push_back(MechanismSpec::mech3(dictator, eps, sel));
      }
    }
    for (double a : {0.1, 0.25, 0.4}) {
      for (std::size_t i = 1; i <= n; ++i) {
        if (i != t) specs.push_back(MechanismSpec::mech4(dictator, AgentId(i), a));
      }
    }
    std::vector<double> uniform_c(n, cap / 2.0);
    std::vector<double> graded_c(n);
    for (std::size_t i = 0; i < n; ++i) graded_c[i] = cap * static_cast<double>(i + 1) / static_cast<double>(n + 1);
    specs.push_back(MechanismSpec::mech5(dictator, std::move(uniform_c)));
    specs.push_back(MechanismSpec::mech5(dictator, std::move(graded_c)));
  }
  return specs;
}

std::vector<WitnessRow> sweep_all_mechanisms_on_witness(std::size_t n, double epsilon,
                                                        std::span<const MechanismSpec> specs) {
  const Witness w = lower_bound_witness(n, epsilon);
  const double opt = opt_two_facility(w.profile).value;
  std::vector<WitnessRow> rows;
  rows.reserve(specs.size());
  for (const MechanismSpec& spec : specs) {
    WitnessRow row;
    row.family = std::string(family_name(spec.family));
    row.params = spec.params();
    row.dictator = spec.dictator && is_dictator_family(spec.family) ? spec.dictator->value() : 0;
    row.n = n;
    row.epsilon = epsilon;
    row.sc = social_cost(run(spec, w.profile).facilities, w.profile);
    row.opt = opt;
    row.ratio = ratio(spec, w.profile);
    row.n_over_4 = w.n_over_4;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace twofac
