#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "twofac/errors.hpp"
#include "twofac/opt.hpp"
#include "twofac/prediction.hpp"
#include "twofac/ratio.hpp"

using namespace twofac;

namespace {

LocationProfile P(std::vector<double> xs) { return LocationProfile(std::move(xs)); }

}  // namespace

TEST(Ratio, Examples) {
  EXPECT_EQ(ratio(MechanismSpec::left_right(), P({0, 1})), 1.0);
  EXPECT_NEAR(ratio(MechanismSpec::mech1(AgentId(1)), P({0, 0.99, 0.99, 0.99, 0.99, 1})), 4.0, 1e-9);
  EXPECT_DOUBLE_EQ(ratio(MechanismSpec::left_right(), P({0, 0.5, 0.5, 0.5, 0.5, 1})), 4.0);
}

TEST(Ratio, InfiniteWhenOptIsZero) {
  // Two positions: OPT = 0, but the fixture puts its second facility at the mean.
  EXPECT_EQ(ratio(MechanismSpec::fixture(), P({0, 0, 1})), std::numeric_limits<double>::infinity());
}

TEST(Bound, Formulas) {
  EXPECT_EQ(theoretical_bound(MechanismSpec::left_right(), 6), 4.0);
  EXPECT_EQ(theoretical_bound(MechanismSpec::mech1(AgentId(1)), 6), 5.0);
  EXPECT_DOUBLE_EQ(theoretical_bound(MechanismSpec::mech2(AgentId(1), 0.5, 2), 6), 5.0);
  EXPECT_DOUBLE_EQ(theoretical_bound(MechanismSpec::mech2(AgentId(1), 0.25, 2), 6), 15.0);
  EXPECT_DOUBLE_EQ(theoretical_bound(MechanismSpec::mech3(AgentId(1), 0.25), 6), 15.0);
  EXPECT_NEAR(theoretical_bound(MechanismSpec::mech3(AgentId(1), 0.4999999), 6), 5.0, 1e-5);
  EXPECT_DOUBLE_EQ(theoretical_bound(MechanismSpec::mech4(AgentId(1), AgentId(2), 0.25), 6), 15.0);
  const auto m5 = MechanismSpec::mech5(AgentId(1), {0.05, 0.05, 0.05, 0.05});
  EXPECT_DOUBLE_EQ(theoretical_bound(m5, 4), (1 - 0.35) / 0.35 * 3);
  EXPECT_TRUE(std::isinf(theoretical_bound(MechanismSpec::fixture(), 6)));
}

TEST(Families, Errors) {
  EXPECT_THROW(family_instance(NamedFamily::Mech1Tight, 4, 0.01), InvalidFamily);
  EXPECT_THROW(family_instance(NamedFamily::Mech1Tight, 6, 0.5), InvalidEpsilon);
  EXPECT_THROW(family_instance(NamedFamily::ConsistencyWitness, 6, 0.0), InvalidEpsilon);
  EXPECT_THROW(parse_named_family("nope"), InvalidFamily);
  EXPECT_EQ(parse_named_family("consistency_witness"), NamedFamily::ConsistencyWitness);
}

TEST(Families, TightInstancesHitNMinusTwo) {
  for (std::size_t n = 5; n <= 12; ++n) {
    for (double delta : {0.001, 0.01, 0.2, 0.49}) {
      const auto fi = family_instance(NamedFamily::Mech1Tight, n, delta);
      const auto r = ratio(fi.spec, fi.profile);
      EXPECT_NEAR(r, static_cast<double>(n) - 2, 1e-9 * n) << n << " " << delta;
    }
    const auto lr = family_instance(NamedFamily::LeftRightTight, n, 0.01);
    EXPECT_NEAR(ratio(lr.spec, lr.profile), static_cast<double>(n) - 2, 1e-9);
  }
}

TEST(Families, WitnessExamples) {
  const auto fi = family_instance(NamedFamily::ConsistencyWitness, 6, 0.1);
  EXPECT_NEAR(opt_two_facility(fi.profile).value, 0.2, 1e-12);
  EXPECT_NEAR(social_cost(run(fi.spec, fi.profile).facilities, fi.profile), 0.3, 1e-12);
  EXPECT_NEAR(ratio(fi.spec, fi.profile), 1.5, 1e-9);
  EXPECT_EQ(witness_cluster_sizes(6), (std::pair<std::size_t, std::size_t>{2, 2}));
  EXPECT_EQ(witness_cluster_sizes(7), (std::pair<std::size_t, std::size_t>{2, 3}));
}

TEST(Families, WitnessRatioIsQuarterNForEvenN) {
  for (std::size_t n : {6, 8, 10, 12}) {
    for (double eps : {0.05, 0.1, 0.2, 0.3}) {
      const auto fi = family_instance(NamedFamily::ConsistencyWitness, n, eps);
      EXPECT_NEAR(ratio(fi.spec, fi.profile), n / 4.0, 1e-9) << n << " " << eps;
    }
  }
}

TEST(Properties, RatioAtLeastOneAndAffineInvariant) {
  Rng rng(41);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = rng.between(2, 12);
    const auto p = random_profile(rng, n);
    MechanismTemplate tmpl;
    tmpl.family = static_cast<Family>(rng.index(6));
    tmpl.a = tmpl.family == Family::M4 ? 0.2 : rng.uniform(0.1, 0.9);
    const auto spec = tmpl.bind(n, rng);
    const double r = ratio(spec, p);
    EXPECT_GE(r, 1.0 - 1e-9);
    const AffineMap m{rng.uniform(0.01, 100), rng.uniform(-10, 10)};
    const double mapped = ratio(spec, apply_affine(p, m));
    if (std::isinf(r)) {
      EXPECT_TRUE(std::isinf(mapped));
    } else {
      EXPECT_NEAR(mapped, r, 1e-9 * std::max(1.0, r));
    }
  }
}

TEST(Harness, EmpiricalIncludesTightFamily) {
  MechanismTemplate tmpl;
  tmpl.family = Family::M1;
  ProfileEnsemble ens;
  ens.count = 200;
  ens.n_max = 10;
  const auto r = empirical_max_ratio(tmpl, ens, 2);
  EXPECT_TRUE(r.bound_satisfied);
  EXPECT_GE(r.max_ratio, 8.0 - 1e-6);
  EXPECT_EQ(r.instances, 206u);
  ASSERT_TRUE(r.argmax_profile && r.argmax_spec);
  EXPECT_NEAR(ratio(*r.argmax_spec, *r.argmax_profile), r.max_ratio, 1e-9);
}

TEST(Harness, WorstCaseSearch) {
  const auto lr = worst_case_search(MechanismSpec::left_right(), 6, 10000, 1);
  EXPECT_GE(lr.max_ratio, 3.9);
  EXPECT_TRUE(lr.bound_satisfied);
  const auto m1 = worst_case_search(MechanismSpec::mech1(AgentId(1)), 6, 10000, 1);
  EXPECT_GE(m1.max_ratio, 3.9);
  EXPECT_TRUE(m1.bound_satisfied);
  const auto m2 = worst_case_search(MechanismSpec::mech2(AgentId(1), 0.25, 2), 6, 10000, 1);
  EXPECT_LE(m2.max_ratio, 15.0 + kBoundSlack);

  const auto again = worst_case_search(MechanismSpec::mech1(AgentId(1)), 6, 10000, 1);
  EXPECT_EQ(again.max_ratio, m1.max_ratio);
  EXPECT_EQ(*again.argmax_profile, *m1.argmax_profile);
}

TEST(Prediction, IgnoreUsageMakesConsistencyEqualRobustness) {
  std::vector<LocationProfile> truths;
  Rng rng(42);
  for (int i = 0; i < 50; ++i) truths.push_back(random_profile(rng, rng.between(2, 10)));
  truths.push_back(family_instance(NamedFamily::ConsistencyWitness, 6, 0.1).profile);
  const auto accurate = accurate_predictions(truths);
  const auto adversarial = adversarial_predictions(truths, 7);
  const auto r = eval_consistency(MechanismSpec::mech1(AgentId(2)), PredictionUsage::Ignore, accurate, adversarial);
  EXPECT_EQ(r.consistency_estimate, r.robustness_estimate);
  EXPECT_GE(r.consistency_estimate, 1.5 - 1e-9);
}

TEST(Prediction, SizeMismatch) {
  PredictedMechanismSpec spec{MechanismSpec::left_right(), P({0, 1}), PredictionUsage::Ignore};
  EXPECT_THROW(run_predicted(spec, P({0, 0.5, 1})), InvalidSpec);
  EXPECT_EQ(run_predicted(spec, P({0, 2})).facilities, (FacilityPair{0, 2}));
}

TEST(Prediction, LeftRightOnWitness) {
  const auto w = lower_bound_witness(6, 0.1);
  EXPECT_EQ(w.n_over_4, 1.5);
  EXPECT_NEAR(ratio(MechanismSpec::left_right(), w.profile), 2.0, 1e-9);
  EXPECT_THROW(lower_bound_witness(6, 0.25), InvalidEpsilon);
}

TEST(Prediction, CostFloor) {
  const auto w = lower_bound_witness(6, 0.1);
  EXPECT_TRUE(witness_cost_floor_holds(w, {0.5, 0.5}));
  EXPECT_TRUE(witness_cost_floor_holds(w, {0.1, 1.2}));
  EXPECT_THROW(witness_cost_floor_holds(w, {0.3, 0.7}), std::invalid_argument);
}

TEST(Prediction, SweepEvenN) {
  for (std::size_t n : {6, 8, 10}) {
    const auto specs = witness_sweep_specs(n);
    const auto rows = sweep_all_mechanisms_on_witness(n, 0.1, specs);
    ASSERT_EQ(rows.size(), specs.size());
    for (const auto& row : rows) {
      EXPECT_GE(row.ratio, n / 4.0 - 1e-9) << row.family << " " << row.params;
      EXPECT_NEAR(row.opt, 0.2, 1e-12);
    }
  }
}
