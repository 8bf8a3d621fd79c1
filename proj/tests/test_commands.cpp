#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "twofac/commands.hpp"

using namespace twofac;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string temp_profile(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST(Commands, EvalMech1) {
  ExperimentConfig cfg;
  cfg.command = Command::Eval;
  cfg.dictator = 2;
  cfg.profile_path = temp_profile("twofac_eval.txt", "0\n0.5\n1\n");
  std::ostringstream csv;
  const auto r = run_command(cfg, csv);
  EXPECT_EQ(r.exit_code, kExitOk);
  const auto rows = lines(csv.str());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "family,params,n,l1,l2,branch,threshold,sc,opt,ratio");
  EXPECT_EQ(rows[1].rfind("m1,t=2,3,0.5,1.5,", 0), 0u) << rows[1];
}

TEST(Commands, LowerBoundMech1) {
  ExperimentConfig cfg;
  cfg.command = Command::LowerBound;
  cfg.n = 6;
  cfg.epsilon = 0.1;
  cfg.dictator = 2;
  std::ostringstream csv;
  const auto r = run_command(cfg, csv);
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_DOUBLE_EQ(r.summary["min_ratio"].get<double>(), 1.5);
  EXPECT_EQ(lines(csv.str()).size(), 2u);
}

TEST(Commands, VerifyFixtureFails) {
  ExperimentConfig cfg;
  cfg.command = Command::VerifySp;
  cfg.mechanism = "fixture";
  cfg.trials = 100;
  std::ostringstream csv;
  const auto r = run_command(cfg, csv);
  EXPECT_EQ(r.exit_code, kExitFalsified);
  const auto rows = lines(csv.str());
  EXPECT_EQ(rows[0], "family,params,n,agent,true_pos,misreport,honest_cost,deviant_cost,gain");
  EXPECT_GE(rows.size(), 2u);
}

TEST(Commands, UsageErrors) {
  ExperimentConfig cfg;
  cfg.command = Command::LowerBound;
  cfg.epsilon = 0.3;
  std::ostringstream csv;
  EXPECT_EQ(run_command(cfg, csv).exit_code, kExitUsage);

  cfg = {};
  cfg.mechanism = "m7";
  EXPECT_EQ(run_command(cfg, csv).exit_code, kExitUsage);

  cfg = {};
  cfg.command = Command::Eval;
  cfg.profile_path = temp_profile("twofac_bad.txt", "0\nabc\n");
  const auto r = run_command(cfg, csv);
  EXPECT_EQ(r.exit_code, kExitUsage);
  EXPECT_NE(r.summary["error"].get<std::string>().find("line 2"), std::string::npos);
}

TEST(Commands, SameSeedSameBytes) {
  for (Command c : {Command::VerifySp, Command::Ratio, Command::Characterize, Command::WorstCase}) {
    ExperimentConfig cfg;
    cfg.command = c;
    cfg.mechanism = c == Command::VerifySp ? "fixture" : "m2";
    cfg.trials = 100;
    cfg.budget = 2000;
    cfg.seed = 77;
    std::ostringstream a, b;
    cfg.threads = 1;
    run_command(cfg, a);
    cfg.threads = 3;
    run_command(cfg, b);
    EXPECT_EQ(a.str(), b.str()) << command_name(c);
  }
}

TEST(Commands, Manifest) {
  ExperimentConfig cfg;
  cfg.command = Command::LowerBound;
  std::ostringstream csv;
  const auto r = run_command(cfg, csv);
  const auto m = run_manifest(cfg, r);
  EXPECT_EQ(m["tool"], "twofac");
  EXPECT_EQ(m["version"], std::string(kVersion));
  EXPECT_EQ(m["config"]["command"], "lower-bound");
  EXPECT_EQ(m["exit_code"], r.exit_code);
}
