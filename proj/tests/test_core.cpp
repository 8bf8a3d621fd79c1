#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "twofac/ensemble.hpp"
#include "twofac/errors.hpp"
#include "twofac/format.hpp"
#include "twofac/io.hpp"
#include "twofac/opt.hpp"
#include "twofac/profile.hpp"

using namespace twofac;

namespace {

LocationProfile P(std::vector<double> xs) { return LocationProfile(std::move(xs)); }

}  // namespace

TEST(Profile, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(P({}), std::invalid_argument);
  EXPECT_THROW(P({0.0, std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
  EXPECT_THROW(P({std::numeric_limits<double>::infinity()}), std::invalid_argument);
}

TEST(Profile, ExtremesAndIds) {
  const auto p = P({3, -2, 5});
  EXPECT_EQ(p.min(), -2);
  EXPECT_EQ(p.max(), 5);
  EXPECT_EQ(p.width(), 7);
  EXPECT_EQ(p[AgentId(1)], 3);
  EXPECT_FALSE(p.contains(AgentId(4)));
  EXPECT_TRUE(P({7, 7, 7}).degenerate());

  const auto ids = P({0.5, 0.1, 0.5, 0.0}).sorted_ids();
  ASSERT_EQ(ids.size(), 4u);
  EXPECT_EQ(ids[0].value(), 4u);
  EXPECT_EQ(ids[1].value(), 2u);
  EXPECT_EQ(ids[2].value(), 1u);  // stable among ties
  EXPECT_EQ(ids[3].value(), 3u);
}

TEST(Profile, WithReplacesOneCoordinate) {
  const auto p = P({0, 0.3, 1}).with(AgentId(2), 0.6);
  EXPECT_EQ(p, P({0, 0.6, 1}));
}

TEST(Cost, DistanceToNearerFacility) {
  EXPECT_DOUBLE_EQ(cost({0, 1}, 0.3), 0.3);
  EXPECT_EQ(cost({0.5, 0.5}, 0.5), 0.0);
  EXPECT_NEAR(cost({0.1, 1.4}, 1.0), 0.4, 1e-15);
}

TEST(Cost, SocialCost) {
  EXPECT_EQ(social_cost({0, 1}, P({0, 1})), 0.0);
  EXPECT_DOUBLE_EQ(social_cost({0, 1}, P({0, 0.5, 0.5, 0.5, 0.5, 1})), 2.0);
  EXPECT_NEAR(social_cost({0.1, 1.0}, P({0, 0.1, 0.1, 0.9, 0.9, 1})), 0.3, 1e-15);
}

TEST(Normalize, Examples) {
  auto n = normalize(P({2, 4, 6}));
  EXPECT_EQ(n.profile, P({0, 0.5, 1}));
  EXPECT_EQ(n.map.scale, 4);
  EXPECT_EQ(n.map.offset, 2);

  n = normalize(P({0, 1}));
  EXPECT_EQ(n.profile, P({0, 1}));
  EXPECT_EQ(n.map.scale, 1);
  EXPECT_EQ(n.map.offset, 0);

  n = normalize(P({-1, 0, 3}));
  EXPECT_EQ(n.profile, P({0, 0.25, 1}));
  EXPECT_EQ(n.map.scale, 4);
  EXPECT_EQ(n.map.offset, -1);

  EXPECT_THROW(normalize(P({7, 7})), DegenerateProfile);
}

TEST(Normalize, PinsExtremesExactly) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> xs(7);
    for (double& x : xs) x = rng.uniform(-50, 50);
    const auto n = normalize(P(xs));
    EXPECT_EQ(n.profile.min(), 0.0);
    EXPECT_EQ(n.profile.max(), 1.0);
  }
}

TEST(Affine, FacilityPairs) {
  EXPECT_EQ(apply_affine(FacilityPair{0, 1}, {4, 2}), (FacilityPair{2, 6}));
  EXPECT_EQ(apply_affine(FacilityPair{-0.5, 1.5}, {2, 0}), (FacilityPair{-1, 3}));
  const auto f = apply_affine(FacilityPair{0.2, 1.4}, {4, -1});
  EXPECT_NEAR(f.l1, -0.2, 1e-12);
  EXPECT_NEAR(f.l2, 4.6, 1e-12);
}

TEST(Affine, DenormalizeRoundTrip) {
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const auto p = random_profile(rng, rng.between(2, 12));
    if (p.degenerate()) continue;
    const auto n = normalize(p);
    const auto back = apply_affine(n.profile, n.map);
    for (std::size_t i = 0; i < p.size(); ++i) {
      EXPECT_NEAR(back.positions()[i], p.positions()[i], 1e-12 * std::max(1.0, p.width()));
    }
  }
}

TEST(ThreeLocation, Expansion) {
  EXPECT_EQ(expand_three_location({{0, 0.5, 1}, {1, 2, 1}}), P({0, 0.5, 0.5, 1}));
  EXPECT_EQ(expand_three_location({{0, 0, 1}, {1, 1, 1}}), P({0, 0, 1}));
  EXPECT_EQ(expand_three_location({{0.3, 0, 1}, {2, 1, 1}}), P({0.3, 0.3, 0, 1}));
  EXPECT_THROW(expand_three_location({{0, 0.5, 1}, {1, 0, 1}}), std::invalid_argument);
}

TEST(Opt, Examples) {
  EXPECT_NEAR(opt_two_facility(P({0, 0.1, 0.9, 1})).value, 0.2, 1e-12);
  const auto two = opt_two_facility(P({0, 1}));
  EXPECT_EQ(two.value, 0.0);
  EXPECT_EQ(two.facilities, (FacilityPair{0, 1}));
  EXPECT_DOUBLE_EQ(opt_two_facility(P({0, 0.5, 0.5, 0.5, 0.5, 1})).value, 0.5);
  EXPECT_EQ(opt_two_facility(P({4})).value, 0.0);
}

TEST(Opt, BruteForceExamples) {
  EXPECT_EQ(brute_force_opt(P({0, 1})), 0.0);
  EXPECT_NEAR(brute_force_opt(P({0, 0.1, 0.9, 1})), 0.2, 1e-12);
  EXPECT_NEAR(brute_force_opt(P({0, 0.99, 0.99, 0.99, 0.99, 1})), 0.01, 1e-12);
  EXPECT_THROW(brute_force_opt(P(std::vector<double>(kBruteForceLimit + 1, 0.0))), InstanceTooLarge);
}

TEST(Opt, FacilitiesAchieveValue) {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const auto p = random_profile(rng, rng.between(1, 12));
    const auto r = opt_two_facility(p);
    EXPECT_NEAR(social_cost(r.facilities, p), r.value, 1e-12);
    EXPECT_NEAR(r.value, brute_force_opt(p), 1e-9);
  }
}

TEST(Opt, PermutationInvariantAndScales) {
  Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = random_profile(rng, rng.between(2, 12));
    std::vector<double> xs(p.positions().begin(), p.positions().end());
    std::reverse(xs.begin(), xs.end());
    const double base = opt_two_facility(p).value;
    EXPECT_NEAR(opt_two_facility(P(xs)).value, base, 1e-12);

    const AffineMap m{rng.uniform(0.1, 10), rng.uniform(-5, 5)};
    EXPECT_NEAR(opt_two_facility(apply_affine(p, m)).value, m.scale * base, 1e-9 * std::max(1.0, m.scale * base));
  }
}

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_double(1.5), "1.5");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  const double third = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(third)), third);
}

TEST(Io, ParseProfile) {
  std::istringstream a("0\n0.5\n1\n");
  EXPECT_EQ(parse_profile(a), P({0, 0.5, 1}));
  std::istringstream b("# hdr\n0\n\n1\n");
  EXPECT_EQ(parse_profile(b), P({0, 1}));
  std::istringstream c("0\nabc\n");
  try {
    parse_profile(c);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream d("# only a comment\n\n");
  EXPECT_THROW(parse_profile(d), EmptyProfile);
}

TEST(Io, ProfileRoundTrip) {
  const auto p = P({0.1, 1.0 / 3.0, -2e-7, 12345.678});
  std::stringstream s;
  write_profile(s, p);
  EXPECT_EQ(parse_profile(s), p);
}

TEST(Io, CsvQuoting) {
  std::ostringstream s;
  CsvWriter w(s);
  w.row({"plain", "a,b", "say \"hi\""});
  EXPECT_EQ(s.str(), "plain,\"a,b\",\"say \"\"hi\"\"\"\n");
}
