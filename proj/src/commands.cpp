#include "twofac/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "twofac/errors.hpp"
#include "twofac/format.hpp"
#include "twofac/io.hpp"
#include "twofac/opt.hpp"
#include "twofac/prediction.hpp"
#include "twofac/ratio.hpp"
#include "twofac/verification.hpp"

namespace twofac {

namespace {

using nlohmann::json;

std::vector<double> parse_c_list(const std::string& text) {
  std::vector<double> out;
  std::string_view rest(text);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw std::invalid_argument("cannot parse c entry '" + std::string(item) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

// Spec for a single known profile: agent ids must be given, m5's c defaults
// to 1/(4n) per agent.
MechanismSpec concrete_spec(const ExperimentConfig& cfg, std::size_t n) {
  MechanismTemplate tmpl = cfg.mechanism_template();
  if (is_dictator_family(tmpl.family) && !tmpl.dictator) throw InvalidSpec("--dictator is required");
  if (tmpl.family == Family::M4 && !tmpl.witness) throw InvalidSpec("--witness is required for m4");
  if (tmpl.family == Family::M5 && tmpl.c.empty()) tmpl.c.assign(n, 1.0 / (4.0 * static_cast<double>(n)));
  Rng unused(0);
  MechanismSpec spec = tmpl.bind(n, unused);
  spec.validate(n);
  return spec;
}

ProfileEnsemble ensemble_for(const ExperimentConfig& cfg, EnsembleKind kind) {
  ProfileEnsemble e;
  e.seed = cfg.seed;
  e.count = cfg.trials;
  e.n_min = cfg.n_min;
  e.n_max = cfg.n_max;
  e.kind = kind;
  return e;
}

MisreportPlan plan_for(const ExperimentConfig& cfg) {
  MisreportPlan plan;
  plan.steps = cfg.grid_steps;
  return plan;
}

void dump_argmax(const ExperimentConfig& cfg, const RatioReport& report) {
  if (cfg.out_path.empty() || !report.argmax_profile) return;
  std::ofstream out(cfg.out_path + ".argmax.txt");
  out << "# argmax profile, ratio " << format_double(report.max_ratio) << '\n';
  write_profile(out, *report.argmax_profile);
}

json ratio_summary(const RatioReport& r) {
  return {{"instances", r.instances},
          {"max_ratio", r.max_ratio},
          {"bound", r.bound},
          {"bound_satisfied", r.bound_satisfied},
          {"min_slack", r.min_slack}};
}

CommandResult cmd_eval(const ExperimentConfig& cfg, std::ostream& csv) {
  if (!cfg.profile_path) throw std::invalid_argument("eval needs --profile");
  const LocationProfile p = parse_profile_file(*cfg.profile_path);
  const MechanismSpec spec = concrete_spec(cfg, p.size());
  const MechanismOutput out = run(spec, p);
  const double sc = social_cost(out.facilities, p);
  const double opt = opt_two_facility(p).value;
  const double r = ratio(spec, p);
  CsvWriter w(csv);
  w.row({"family", "params", "n", "l1", "l2", "branch", "threshold", "sc", "opt", "ratio"});
  w.row({family_name(spec.family), spec.params(), std::to_string(p.size()), format_double(out.facilities.l1),
         format_double(out.facilities.l2), branch_name(out.branch),
         out.switching_threshold ? format_double(*out.switching_threshold) : "", format_double(sc),
         format_double(opt), format_double(r)});
  return {kExitOk,
          {{"l1", out.facilities.l1}, {"l2", out.facilities.l2}, {"sc", sc}, {"opt", opt}, {"ratio", r}}};
}

CommandResult cmd_opt(const ExperimentConfig& cfg, std::ostream& csv) {
  if (!cfg.profile_path) throw std::invalid_argument("opt needs --profile");
  const LocationProfile p = parse_profile_file(*cfg.profile_path);
  const OptResult r = opt_two_facility(p);
  CsvWriter w(csv);
  w.row({"n", "opt", "l1", "l2", "split"});
  w.row({std::to_string(p.size()), format_double(r.value), format_double(r.facilities.l1),
         format_double(r.facilities.l2), std::to_string(r.split)});
  return {kExitOk, {{"opt", r.value}, {"split", r.split}}};
}

CommandResult cmd_verify(const ExperimentConfig& cfg, std::ostream& csv) {
  const MisreportPlan plan = plan_for(cfg);
  VerificationReport report;
  if (cfg.profile_path) {
    const LocationProfile p = parse_profile_file(*cfg.profile_path);
    const Instance inst{0, p, concrete_spec(cfg, p.size())};
    report = verify_instances(std::span<const Instance>(&inst, 1), plan, cfg.threads);
  } else {
    const EnsembleKind kind = cfg.ensemble == "three-location" ? EnsembleKind::ThreeLocation : EnsembleKind::Uniform;
    report = verify_mechanism(cfg.mechanism_template(), ensemble_for(cfg, kind), plan, cfg.threads);
  }
  write_violations_csv(csv, report.violations);
  return {report.clean() ? kExitOk : kExitFalsified,
          {{"trials", report.trials},
           {"agent_checks", report.agent_checks},
           {"violations", report.violations.size()},
           {"max_gain", report.max_gain}}};
}

CommandResult cmd_characterize(const ExperimentConfig& cfg, std::ostream& csv) {
  const MechanismTemplate tmpl = cfg.mechanism_template();
  std::vector<std::pair<std::string, EnsembleKind>> kinds;
  if (cfg.ensemble != "three-location") kinds.emplace_back("uniform", EnsembleKind::Uniform);
  if (cfg.ensemble != "uniform") kinds.emplace_back("three-location", EnsembleKind::ThreeLocation);
  json summary = json::object();
  std::size_t failures = 0;
  bool header = true;
  for (const auto& [name, kind] : kinds) {
    const CharacterizationReport r = characterization_sweep(tmpl, ensemble_for(cfg, kind));
    write_shape_failures_csv(csv, name, r.failures, header);
    header = false;
    failures += r.failures.size();
    summary[name] = {{"checked", r.checked}, {"failures", r.failures.size()}};
  }
  return {failures == 0 ? kExitOk : kExitFalsified, summary};
}

CommandResult cmd_ratio(const ExperimentConfig& cfg, std::ostream& csv) {
  RatioReport report;
  if (cfg.profile_path) {
    const LocationProfile p = parse_profile_file(*cfg.profile_path);
    const Instance inst{0, p, concrete_spec(cfg, p.size())};
    report = evaluate_ratios(std::span<const Instance>(&inst, 1));
  } else {
    report = empirical_max_ratio(cfg.mechanism_template(), ensemble_for(cfg, EnsembleKind::Uniform), cfg.threads,
                                 cfg.delta);
  }
  write_ratio_csv(csv, report.rows);
  dump_argmax(cfg, report);
  return {report.bound_satisfied ? kExitOk : kExitFalsified, ratio_summary(report)};
}

CommandResult cmd_worst_case(const ExperimentConfig& cfg, std::ostream& csv) {
  const MechanismSpec spec = concrete_spec(cfg, cfg.n);
  const RatioReport report = worst_case_search(spec, cfg.n, cfg.budget, cfg.seed);
  write_ratio_csv(csv, report.rows);
  dump_argmax(cfg, report);
  return {report.bound_satisfied ? kExitOk : kExitFalsified, ratio_summary(report)};
}

CommandResult cmd_lower_bound(const ExperimentConfig& cfg, std::ostream& csv) {
  std::vector<MechanismSpec> specs;
  if (cfg.mechanism == "all") {
    specs = witness_sweep_specs(cfg.n);
  } else {
    ExperimentConfig one = cfg;
    const Family family = parse_family(cfg.mechanism);
    if (!is_dictator_family(family)) {
      specs.push_back(concrete_spec(one, cfg.n));
    } else {
      for (std::size_t t = 1; t <= cfg.n; ++t) {
        if (cfg.dictator && *cfg.dictator != t) continue;
        one.dictator = t;
        for (std::size_t i = 1; i <= cfg.n; ++i) {
          if (family != Family::M4 && i > 1) break;
          if (family == Family::M4) {
            if (i == t || (cfg.witness && *cfg.witness != i)) continue;
            one.witness = i;
          }
          specs.push_back(concrete_spec(one, cfg.n));
        }
      }
    }
  }
  const auto rows = sweep_all_mechanisms_on_witness(cfg.n, cfg.epsilon, specs);
  write_witness_csv(csv, rows);
  double min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) min_ratio = std::min(min_ratio, r.ratio);
  const double n_over_4 = static_cast<double>(cfg.n) / 4.0;
  return {min_ratio >= n_over_4 - 1e-9 ? kExitOk : kExitFalsified,
          {{"rows", rows.size()}, {"min_ratio", min_ratio}, {"n_over_4", n_over_4}}};
}

}  // namespace

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Eval: return "eval";
    case Command::Opt: return "opt";
    case Command::VerifySp: return "verify-sp";
    case Command::Characterize: return "characterize";
    case Command::Ratio: return "ratio";
    case Command::WorstCase: return "worst-case";
    case Command::LowerBound: return "lower-bound";
  }
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::Eval, Command::Opt, Command::VerifySp, Command::Characterize, Command::Ratio,
                    Command::WorstCase, Command::LowerBound}) {
    if (command_name(c) == name) return c;
  }
  throw std::invalid_argument("unknown command '" + std::string(name) + "'");
}

MechanismTemplate ExperimentConfig::mechanism_template() const {
  MechanismTemplate tmpl;
  tmpl.family = parse_family(mechanism);
  tmpl.a = a.value_or(tmpl.family == Family::M4 ? 0.25 : 0.5);
  tmpl.k = k;
  tmpl.epsilon = m3_epsilon;
  tmpl.middle = parse_selector(selector);
  if (dictator) tmpl.dictator = AgentId(*dictator);
  if (witness) tmpl.witness = AgentId(*witness);
  if (!c.empty()) tmpl.c = parse_c_list(c);
  return tmpl;
}

void ExperimentConfig::validate() const {
  if (!(mechanism == "all" && command == Command::LowerBound)) {
    const MechanismTemplate tmpl = mechanism_template();
    // Range checks on the family parameters, independent of any profile.
    MechanismSpec probe;
    probe.family = tmpl.family;
    probe.dictator = AgentId(1);
    probe.witness = AgentId(2);
    probe.a = tmpl.a;
    probe.k = tmpl.k;
    probe.epsilon = tmpl.epsilon;
    probe.middle = tmpl.middle;
    if (tmpl.family != Family::M5) probe.validate(std::max<std::size_t>(2, n));
  }
  if (n_min < 1 || n_min > n_max) throw std::invalid_argument("need 1 <= n-min <= n-max");
  if (grid_steps < 2) throw std::invalid_argument("grid-steps must be at least 2");
  if (budget < 1) throw std::invalid_argument("budget must be at least 1");
  if (ensemble != "uniform" && ensemble != "three-location" && ensemble != "both") {
    throw std::invalid_argument("ensemble must be uniform, three-location or both");
  }
  if (command == Command::LowerBound) {
    if (n < 5) throw InvalidFamily("lower-bound needs n >= 5");
    if (!(epsilon > 0.0 && epsilon < 0.25)) throw InvalidEpsilon("eps must lie in (0, 1/4)");
  }
  if (command == Command::WorstCase && n < 2) throw std::invalid_argument("worst-case needs n >= 2");
}

nlohmann::json ExperimentConfig::to_json() const {
  json j = {{"command", std::string(command_name(command))},
            {"mechanism", mechanism},
            {"k", k},
            {"m3_eps", m3_epsilon},
            {"selector", selector},
            {"c", c},
            {"n", n},
            {"n_min", n_min},
            {"n_max", n_max},
            {"trials", trials},
            {"seed", seed},
            {"grid_steps", grid_steps},
            {"eps", epsilon},
            {"delta", delta},
            {"budget", budget},
            {"ensemble", ensemble}};
  j["dictator"] = dictator ? json(*dictator) : json(nullptr);
  j["witness"] = witness ? json(*witness) : json(nullptr);
  j["a"] = a ? json(*a) : json(nullptr);
  j["profile"] = profile_path ? json(*profile_path) : json(nullptr);
  return j;
}

CommandResult run_command(const ExperimentConfig& cfg, std::ostream& csv) {
  try {
    cfg.validate();
    switch (cfg.command) {
      case Command::Eval: return cmd_eval(cfg, csv);
      case Command::Opt: return cmd_opt(cfg, csv);
      case Command::VerifySp: return cmd_verify(cfg, csv);
      case Command::Characterize: return cmd_characterize(cfg, csv);
      case Command::Ratio: return cmd_ratio(cfg, csv);
      case Command::WorstCase: return cmd_worst_case(cfg, csv);
      case Command::LowerBound: return cmd_lower_bound(cfg, csv);
    }
  } catch (const std::exception& e) {
    return {kExitUsage, {{"error", e.what()}}};
  }
  return {kExitUsage, {{"error", "unhandled command"}}};
}

nlohmann::json run_manifest(const ExperimentConfig& cfg, const CommandResult& result) {
  return {{"tool", "twofac"},
          {"version", std::string(kVersion)},
          {"seed", cfg.seed},
          {"config", cfg.to_json()},
          {"exit_code", result.exit_code},
          {"summary", result.summary}};
}

}  // namespace twofac
