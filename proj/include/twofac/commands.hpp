#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "twofac/ensemble.hpp"
#include "twofac/mechanism.hpp"

namespace twofac {

inline constexpr std::string_view kVersion = "1.0.0";

enum class Command { Eval, Opt, VerifySp, Characterize, Ratio, WorstCase, LowerBound };

std::string_view command_name(Command c);
Command parse_command(std::string_view name);

/// Exit statuses of run_command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFalsified = 1;
inline constexpr int kExitUsage = 2;

struct ExperimentConfig {
  Command command = Command::Eval;
  /// Family name; "all" is accepted by lower-bound.
  std::string mechanism = "m1";
  std::optional<std::size_t> dictator;
  std::optional<std::size_t> witness;
  /// Defaults to 0.5 for m2 and 0.25 for m4.
  std::optional<double> a;
  double k = 2.0;
  double m3_epsilon = 0.25;
  std::string selector = "3L";
  /// Comma-separated c-vector for m5; empty draws one per instance.
  std::string c;
  std::optional<std::string> profile_path;
  std::size_t n = 6;
  std::size_t n_min = 5;
  std::size_t n_max = 12;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::size_t grid_steps = 201;
  /// Witness epsilon for lower-bound.
  double epsilon = 0.1;
  /// Tight-family parameter.
  double delta = 0.01;
  std::size_t budget = 10000;
  /// uniform, three-location, or both (characterize only).
  std::string ensemble = "uniform";
  std::string out_path;
  unsigned threads = 1;

  /// Checks ranges and builds the mechanism template; throws std::invalid_argument
  /// (or a subclass) on bad input.
  MechanismTemplate mechanism_template() const;
  void validate() const;
  nlohmann::json to_json() const;
};

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json summary;
};

/// Runs one command, writing its CSV to `csv`. Never throws for bad
/// configuration: such errors come back as kExitUsage with the message in
/// summary["error"].
CommandResult run_command(const ExperimentConfig& cfg, std::ostream& csv);

/// Config echo, seed, version and summary statistics. Contains nothing that
/// varies between runs with the same config.
nlohmann::json run_manifest(const ExperimentConfig& cfg, const CommandResult& result);

}  // namespace twofac
