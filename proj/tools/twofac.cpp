// twofac: evaluate, verify and stress-test two-facility location mechanisms.
//
//   twofac eval --mechanism m1 --dictator 2 --profile p.txt
//   twofac verify-sp --mechanism m2 --a 0.2 --k 3 --trials 1000 --seed 7 --out sp.csv
//   twofac lower-bound --n 6 --eps 0.1 --mechanism all
//
// Options may also come from a TOML/INI file given with --config; keys are the
// long option names. TWOFAC_OUT and TWOFAC_THREADS override --out and
// --threads when those flags are absent.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "twofac/commands.hpp"

int main(int argc, char** argv) {
  using namespace twofac;

  CLI::App app{"Strategy-proof two-facility location mechanisms on a line"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.fallthrough();
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string out_path;
  std::string manifest_path;
  unsigned threads = 0;

  app.add_option("--mechanism", cfg.mechanism, "leftright, m1..m5, fixture (lower-bound also takes 'all')");
  app.add_option("--dictator", cfg.dictator, "Dictator agent id (1-based)");
  app.add_option("--witness", cfg.witness, "Agent i compared against the dictator (m4)");
  app.add_option("--a", cfg.a, "Switching threshold (m2 default 0.5, m4 default 0.25)");
  app.add_option("--k", cfg.k, "Stretch parameter k >= 2 (m2)");
  app.add_option("--m3-eps", cfg.m3_epsilon, "Band width epsilon in (0, 1/2) (m3)");
  app.add_option("--selector", cfg.selector, "m3 middle-band placement: 3L or -2L");
  app.add_option("--c", cfg.c, "Comma-separated per-agent c values (m5); omitted = random per instance");
  app.add_option("--profile", cfg.profile_path, "Profile text file");
  app.add_option("--n", cfg.n, "Number of agents (worst-case, lower-bound)");
  app.add_option("--n-min", cfg.n_min, "Smallest ensemble profile size");
  app.add_option("--n-max", cfg.n_max, "Largest ensemble profile size");
  app.add_option("--trials", cfg.trials, "Ensemble size");
  app.add_option("--seed", cfg.seed, "64-bit seed");
  app.add_option("--grid-steps", cfg.grid_steps, "Misreport grid resolution");
  app.add_option("--eps", cfg.epsilon, "Witness epsilon in (0, 1/4) (lower-bound)");
  app.add_option("--delta", cfg.delta, "Tight-family parameter in (0, 1/2)");
  app.add_option("--budget", cfg.budget, "Ratio evaluations for worst-case");
  app.add_option("--ensemble", cfg.ensemble, "uniform, three-location or both");
  app.add_option("--out", out_path, "CSV destination (default stdout)");
  app.add_option("--manifest", manifest_path, "Manifest destination (default <out>.manifest.json)");
  app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

  for (const char* name : {"eval", "opt", "verify-sp", "characterize", "ratio", "worst-case", "lower-bound"}) {
    app.add_subcommand(name)->callback([&cfg, name] { cfg.command = parse_command(name); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (out_path.empty()) {
    if (const char* env = std::getenv("TWOFAC_OUT")) out_path = env;
  }
  if (app.count("--threads") == 0) {
    if (const char* env = std::getenv("TWOFAC_THREADS")) threads = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  }
  cfg.out_path = out_path;
  cfg.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;

  std::ostringstream csv;
  const CommandResult result = run_command(cfg, csv);
  if (result.exit_code == kExitUsage) {
    std::cerr << "error: " << result.summary.value("error", std::string("invalid configuration")) << '\n';
    return kExitUsage;
  }

  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream(out_path, std::ios::binary) << csv.str();
    if (manifest_path.empty()) manifest_path = out_path + ".manifest.json";
  }
  if (!manifest_path.empty()) {
    std::ofstream(manifest_path, std::ios::binary) << run_manifest(cfg, result).dump(2) << '\n';
  }
  std::cerr << result.summary.dump() << '\n';
  return result.exit_code;
}
