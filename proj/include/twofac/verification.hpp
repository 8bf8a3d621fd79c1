#pragma once

// Empirical strategy-proofness search.
//
// The universal quantifier over real misreports is replaced by a finite
// candidate set: a uniform grid over a window around the profile plus
// structured points where the piecewise-affine mechanisms change behaviour
// (other agents' positions, the extremes, switching thresholds and the
// reports that put the dictator exactly on a threshold), each nudged by
// +-1e-6 L.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "twofac/ensemble.hpp"
#include "twofac/mechanism.hpp"
#include "twofac/profile.hpp"

namespace twofac {

/// A misreport must lower the agent's cost by more than this to count.
inline constexpr double kSpTolerance = 1e-9;

struct MisreportPlan {
  /// Search window; defaults to [min - 2L, max + 2L].
  std::optional<double> lo;
  std::optional<double> hi;
  std::size_t steps = 201;
  bool structured = true;

  /// Throws std::invalid_argument unless steps >= 2 and lo < hi.
  void validate() const;
};

std::vector<double> misreport_candidates(const LocationProfile& p, AgentId i, const MechanismSpec& spec,
                                         const MisreportPlan& plan);

struct MisreportOutcome {
  double honest_cost = 0.0;
  double deviant_cost = 0.0;
  double gain() const { return honest_cost - deviant_cost; }
};

/// Cost agent i pays (at her true position p[i]) when reporting truthfully
/// versus when reporting `misreport`.
MisreportOutcome evaluate_misreport(const MechanismSpec& spec, const LocationProfile& p, AgentId i,
                                    double misreport);

struct Violation {
  std::size_t instance_id = 0;
  LocationProfile profile;
  MechanismSpec spec;
  AgentId agent;
  double true_pos = 0.0;
  double misreport = 0.0;
  double honest_cost = 0.0;
  double deviant_cost = 0.0;

  double gain() const { return honest_cost - deviant_cost; }
  /// Re-evaluates the recorded misreport from scratch.
  MisreportOutcome replay() const;
};

/// The most profitable misreport among the candidates, if any beats the
/// truthful report by more than kSpTolerance.
std::optional<Violation> check_agent_sp(const MechanismSpec& spec, const LocationProfile& p, AgentId i,
                                        const MisreportPlan& plan);

struct VerificationReport {
  std::size_t trials = 0;
  std::size_t agent_checks = 0;
  std::vector<Violation> violations;
  double max_gain = 0.0;

  bool clean() const { return violations.empty(); }
  void merge(const VerificationReport& other);
};

/// Checks every agent of every instance; violations ordered by (instance, agent).
VerificationReport verify_instances(std::span<const Instance> instances, const MisreportPlan& plan,
                                    unsigned threads = 1);

VerificationReport verify_mechanism(const MechanismTemplate& tmpl, const ProfileEnsemble& ensemble,
                                    const MisreportPlan& plan, unsigned threads = 1);

/// If z is an output facility, moving agent i to z keeps a facility at z.
/// Every strategy-proof mechanism has this property: otherwise an agent at z
/// would gain by reporting p[i] instead.
bool check_facility_retention(const MechanismSpec& spec, const LocationProfile& p, AgentId i);

struct ShapeFailure {
  std::size_t instance_id = 0;
  LocationProfile profile;
  MechanismSpec spec;
  FacilityPair facilities;
};

struct CharacterizationReport {
  std::size_t checked = 0;
  std::vector<ShapeFailure> failures;
};

/// Runs extreme_or_coincident on every output of the ensemble.
CharacterizationReport characterization_sweep(const MechanismTemplate& tmpl, const ProfileEnsemble& ensemble,
                                              double tol = kSpTolerance);
CharacterizationReport characterization_sweep(std::span<const Instance> instances, double tol = kSpTolerance);

}  // namespace twofac
