#pragma once

// Prediction-augmented evaluation: consistency (ratio when the predicted
// profile equals the truth) and robustness (ratio under arbitrary
// predictions), plus the clustered witness instance on which no mechanism
// with the extreme-or-coincident output shape beats roughly n/4.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "twofac/mechanism.hpp"
#include "twofac/profile.hpp"

namespace twofac {

enum class PredictionUsage { Ignore };

struct PredictedMechanismSpec {
  MechanismSpec base;
  LocationProfile prediction;
  PredictionUsage usage = PredictionUsage::Ignore;
};

/// Throws InvalidSpec if the prediction and the report differ in size.
MechanismOutput run_predicted(const PredictedMechanismSpec& spec, const LocationProfile& reported);

struct PredictionInstance {
  LocationProfile truth;
  LocationProfile prediction;
};

/// Pairs each truth with itself.
std::vector<PredictionInstance> accurate_predictions(std::span<const LocationProfile> truths);
/// Pairs each truth with an independent uniform profile of the same size.
std::vector<PredictionInstance> adversarial_predictions(std::span<const LocationProfile> truths,
                                                        std::uint64_t seed);

struct ConsistencyReport {
  double consistency_estimate = 0.0;
  double robustness_estimate = 0.0;
  /// n/4 for the largest n among the accurate instances.
  double lower_bound_value = 0.0;
};

ConsistencyReport eval_consistency(const MechanismSpec& base, PredictionUsage usage,
                                   std::span<const PredictionInstance> accurate,
                                   std::span<const PredictionInstance> adversarial);

struct Witness {
  LocationProfile profile;
  std::size_t n = 0;
  double epsilon = 0.0;
  double n_over_4 = 0.0;
};

/// (0, eps x a, (1-eps) x b, 1) with a = b = n/2 - 1 for even n and
/// a = (n-3)/2, b = (n-1)/2 for odd n. Requires n >= 5 (InvalidFamily) and
/// 0 < eps < 1/4 (InvalidEpsilon).
Witness lower_bound_witness(std::size_t n, double epsilon);

/// For an output with the extreme-or-coincident shape, checks SC >= n eps / 2
/// on the witness. Throws std::invalid_argument if f lacks that shape.
bool witness_cost_floor_holds(const Witness& w, const FacilityPair& f);

struct WitnessRow {
  std::string family;
  std::string params;
  std::size_t dictator = 0;  // 0 when the family has none
  std::size_t n = 0;
  double epsilon = 0.0;
  double sc = 0.0;
  double opt = 0.0;
  double ratio = 0.0;
  double n_over_4 = 0.0;
};

/// Every implemented (non-fixture) family over a parameter grid and every
/// dictator placement (and, for m4, every witness agent).
std::vector<MechanismSpec> witness_sweep_specs(std::size_t n);

std::vector<WitnessRow> sweep_all_mechanisms_on_witness(std::size_t n, double epsilon,
                                                        std::span<const MechanismSpec> specs);

}  // namespace twofac
