#pragma once

// Deterministic strategy-proof mechanisms for the two-facility game on a line.
//
// Every dictator mechanism places l1 at the dictator's reported position and
// l2 on the far side of the profile: at or beyond the rightmost agent, or at
// or before the leftmost one. Where l2 goes is decided by where the dictator
// sits relative to a switching threshold, expressed as a proportion of the
// profile width L = max - min. All formulas are evaluated in the reported
// (un-normalized) coordinates.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twofac/profile.hpp"

namespace twofac {

enum class Family { LeftRight, M1, M2, M3, M4, M5, Fixture };

/// Where Mechanism 3 puts l2 when the dictator sits in the middle band.
enum class MiddleSelector {
  ThreeL,     // x_l + 3L
  MinusTwoL,  // x_l - 2L
};

std::string_view family_name(Family f);
/// Inverse of family_name; also accepts "lr". Throws InvalidFamily.
Family parse_family(std::string_view name);
std::string_view selector_name(MiddleSelector s);
MiddleSelector parse_selector(std::string_view name);

bool is_dictator_family(Family f);

struct MechanismSpec {
  Family family = Family::LeftRight;
  std::optional<AgentId> dictator;
  double a = 0.5;
  double k = 2.0;
  double epsilon = 0.25;
  std::optional<AgentId> witness;
  /// Indexed by agent id - 1; the dictator's entry is ignored.
  std::vector<double> c;
  MiddleSelector middle = MiddleSelector::ThreeL;

  static MechanismSpec left_right();
  static MechanismSpec mech1(AgentId t);
  static MechanismSpec mech2(AgentId t, double a, double k);
  static MechanismSpec mech3(AgentId t, double epsilon, MiddleSelector middle = MiddleSelector::ThreeL);
  static MechanismSpec mech4(AgentId t, AgentId i, double a);
  static MechanismSpec mech5(AgentId t, std::vector<double> c);
  static MechanismSpec fixture();

  /// Throws InvalidSpec if a parameter is out of range or an agent id is not
  /// valid for n agents.
  void validate(std::size_t n) const;

  /// Compact, deterministic parameter string, e.g. "t=2;a=0.25;k=2".
  std::string params() const;
};

enum class Branch {
  Degenerate,  // all agents coincide
  Extremes,    // {min, max}
  Right,       // l2 at or beyond the rightmost agent
  Left,        // l2 at or before the leftmost agent
  Middle,      // Mechanism 3 middle band
  Mean,        // fixture
};

std::string_view branch_name(Branch b);

struct MechanismOutput {
  FacilityPair facilities;
  Branch branch = Branch::Extremes;
  /// Switching threshold actually used (proportion of L), when the family has one.
  std::optional<double> switching_threshold;
};

/// Validates spec against p and dispatches. A degenerate profile yields both
/// facilities at the common position for every family.
MechanismOutput run(const MechanismSpec& spec, const LocationProfile& p);

FacilityPair mech_left_right(const LocationProfile& p);
FacilityPair mech1(const LocationProfile& p, AgentId t);
MechanismOutput mech2(const LocationProfile& p, AgentId t, double a, double k);
MechanismOutput mech3(const LocationProfile& p, AgentId t, double epsilon, MiddleSelector middle);
MechanismOutput mech4(const LocationProfile& p, AgentId t, AgentId i, double a);
MechanismOutput mech5(const LocationProfile& p, AgentId t, const std::vector<double>& c);
/// {min, mean}. Deliberately manipulable; used as a negative control.
FacilityPair fixture_non_sp(const LocationProfile& p);

/// Mechanism 5's switching threshold: 1/2 shifted by -c_i for every other
/// agent at or left of the dictator and +c_i otherwise, in ascending id order.
double mech5_threshold(const LocationProfile& p, AgentId t, const std::vector<double>& c);

/// Output-shape property every nice mechanism satisfies: some facility is at
/// or beyond an extreme agent, or the two facilities coincide.
bool extreme_or_coincident(const LocationProfile& p, const FacilityPair& f, double tol);

}  // namespace twofac
