// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <string>

#include "qre/campaign.hpp"
#include "qre/errors.hpp"

using namespace qre;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(QRE_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) { return std::string(QRE_FIXTURE_DIR) + "/" + name; }

CampaignConfig small_config() {
  CampaignConfig c;
  c.inequality_ids = {"monotonicity", "ssa", "pinsker", "operator_ssa:q", "equality"};
  c.function_ids = {"neg_log", "f_p:0.5"};
  c.dims = {{2, 2}, {2, 2, 2}};
  c.betas = {0.5};
  c.trials = 5;
  c.seed = 11;
  return c;
}

std::string jsonl_of(const CampaignConfig& c) {
  std::ostringstream out;
  run_campaign(c, &out);
  return out.str();
}

}  // namespace

TEST(Config, ParsesAllKeys) {
  const auto j = nlohmann::json::parse(R"({
    "inequalities": ["monotonicity", "ssa"], "functions": ["neg_log", "f_p:0.5"],
    "dims": [[2, 2], [2, 2, 2]], "betas": [0.25, 0.75], "trials": 3, "seed": 9,
    "rank_policy": "mixed", "output": "x.jsonl", "tolerances": {"ssa": 1e-7}, "threads": 2})");
  const CampaignConfig c = campaign_config_from_json(j);
  EXPECT_EQ(c.inequality_ids.size(), 2u);
  EXPECT_EQ(c.betas[1], 0.75);
  EXPECT_EQ(c.trials, 3);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.rank_policy, RankPolicy::Mixed);
  EXPECT_EQ(c.output_path, "x.jsonl");
  EXPECT_EQ(c.tolerance_overrides.at("ssa"), 1e-7);
  EXPECT_EQ(c.threads, 2);
}

TEST(Config, RejectsBadInput) {
  auto parse = [](const char* s) { return campaign_config_from_json(nlohmann::json::parse(s)); };
  EXPECT_THROW(parse(R"({"inequalities": ["ssa"], "trials": 0})"), InputError);
  EXPECT_THROW(parse(R"({"inequalities": ["ssa"]})"), InputError);
  EXPECT_THROW(parse(R"({"inequalities": ["nope"], "trials": 1})"), InputError);
  EXPECT_THROW(parse(R"({"inequalities": ["ssa"], "trials": 1, "betas": [1.0]})"), InputError);
  EXPECT_THROW(parse(R"({"inequalities": ["ssa"], "trials": 1, "functions": ["sin"]})"),
               InputError);
  EXPECT_THROW(parse(R"({"inequalities": ["ssa"], "trials": 1, "extra": 1})"), InputError);
  EXPECT_THROW(parse(R"({"inequalities": ["ssa"], "trials": 1, "rank_policy": "low"})"),
               InputError);
  EXPECT_THROW(load_campaign_config(fixture("malformed.json")), InputError);
}

TEST(Campaign, ZeroTrialsRejected) {
  CampaignConfig c = small_config();
  c.trials = 0;
  EXPECT_THROW(run_campaign(c, nullptr), InputError);
}

TEST(Campaign, EnumerationRespectsShapes) {
  const auto trials = enumerate_trials(small_config());
  std::set<std::uint64_t> seeds;
  for (const TrialSpec& t : trials) {
    seeds.insert(t.seed);
    if (t.inequality_id == "monotonicity") EXPECT_EQ(t.dims.size(), 2u);
    if (t.inequality_id == "ssa") {
      EXPECT_EQ(t.dims.size(), 3u);
      EXPECT_EQ(t.function_id, "neg_log");
    }
  }
  EXPECT_EQ(seeds.size(), trials.size());
  // monotonicity 2 f x 1 dims, ssa 1, pinsker 2 f x 2 dims, operator_ssa 2 f, equality 1.
  EXPECT_EQ(trials.size(), 5u * (2 + 1 + 4 + 2 + 1));
}

TEST(Campaign, WydIdsOnlyTakePowerFunctions) {
  CampaignConfig c;
  c.inequality_ids = {"wyd_skew", "operator_wyd", "wyd_concavity"};
  c.function_ids = {"neg_log", "f_p:0.5", "f_p:1.5"};
  c.trials = 1;
  const auto trials = enumerate_trials(c);
  for (const TrialSpec& t : trials) EXPECT_NE(t.function_id, "neg_log");
  // skew and operator WYD need p in (0, 1); concavity takes both powers.
  // Skew and concavity run on both default dims, operator WYD on (2,2,2) only.
  EXPECT_EQ(trials.size(), 2u + 1u + 4u);
}

TEST(Campaign, AllPassAndSummaryCounts) {
  const CampaignConfig c = small_config();
  std::ostringstream out;
  const CampaignSummary s = run_campaign(c, &out);
  EXPECT_EQ(s.trials, static_cast<int>(enumerate_trials(c).size()));
  EXPECT_EQ(s.failures, 0);
  EXPECT_EQ(s.passes + s.divergent, s.trials);
  EXPECT_EQ(s.per_inequality.at("ssa").trials, 5);
  std::istringstream lines(out.str());
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("inequality_id"));
    EXPECT_TRUE(j.contains("seed"));
    EXPECT_TRUE(j.contains("checks"));
    ++n;
  }
  EXPECT_EQ(n, s.trials);
}

TEST(Campaign, DeterministicAcrossRunsAndThreads) {
  CampaignConfig c = small_config();
  const std::string first = jsonl_of(c);
  EXPECT_EQ(first, jsonl_of(c));
  c.threads = 3;
  EXPECT_EQ(first, jsonl_of(c));
  c.seed = 12;
  EXPECT_NE(first, jsonl_of(c));
}

TEST(Campaign, ReplayReproducesReport) {
  const CampaignConfig c = small_config();
  const auto trials = enumerate_trials(c);
  std::ostringstream out;
  run_campaign(c, &out);
  std::istringstream lines(out.str());
  std::string line;
  for (const TrialSpec& t : trials) {
    std::getline(lines, line);
    TrialSpec replay;
    replay.inequality_id = t.inequality_id;
    replay.function_id = t.function_id;
    replay.dims = t.dims;
    replay.beta = t.beta;
    replay.seed = nlohmann::json::parse(line).at("seed").get<std::uint64_t>();
    EXPECT_EQ(run_trial(replay).to_json().dump(), line);
  }
}

TEST(Campaign, MixedRankCountsDivergenceSeparately) {
  CampaignConfig c;
  c.inequality_ids = {"monotonicity", "pinsker"};
  c.function_ids = {"neg_log", "f_p:1.5"};
  c.dims = {{2, 2}};
  c.trials = 60;
  c.seed = 5;
  c.rank_policy = RankPolicy::Mixed;
  const CampaignSummary s = run_campaign(c, nullptr);
  EXPECT_GT(s.divergent, 0);
  EXPECT_EQ(s.failures, 0);
}

TEST(Campaign, ToleranceOverrideCanFailAReport) {
  CampaignConfig c;
  c.inequality_ids = {"monotonicity"};
  c.dims = {{2, 2}};
  c.trials = 3;
  // A negative tolerance demands more margin than any instance has.
  c.tolerance_overrides = {{"monotonicity", -1e6}};
  const CampaignSummary s = run_campaign(c, nullptr);
  EXPECT_EQ(s.failures, 3);
  EXPECT_EQ(s.failed.size(), 3u);
}

TEST(Campaign, RunTrialRejectsMismatchedDims) {
  TrialSpec t;
  t.inequality_id = "ssa";
  t.dims = {2, 2};
  EXPECT_THROW(run_trial(t), InputError);
}

TEST(Cli, BoundsConstantsForLogAtHalf) {
  const CliResult r = run_cli("bounds constants --f neg_log --beta 0.5");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("alpha").get<double>(), 0.25);
  EXPECT_EQ(j.at("C").get<double>(), 1.0);
  EXPECT_EQ(j.at("c").get<double>(), 0.0);
}

TEST(Cli, PinskerOnDiagonalFixture) {
  const CliResult r = run_cli("verify pinsker --f f_p:0.5 --rho " + fixture("diag_rho.json") +
                        " --sigma " + fixture("diag_sigma.json") + " --json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j.at("lhs").get<double>(), 0.125, 1e-12);
  // 4 (1 - Tr sigma^{1/2} rho^{1/2}) with rho = I/2, sigma = diag(3/4, 1/4).
  const double rhs = 4.0 * (1.0 - std::sqrt(0.5) * (std::sqrt(0.75) + std::sqrt(0.25)));
  EXPECT_NEAR(j.at("rhs").get<double>(), rhs, 1e-12);
  const CliResult log = run_cli("verify pinsker --f neg_log --rho " + fixture("diag_rho.json") +
                          " --sigma " + fixture("diag_sigma.json") + " --json");
  EXPECT_NEAR(nlohmann::json::parse(log.out).at("rhs").get<double>(), 0.5 * std::log(4.0 / 3.0),
              1e-12);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("verify pinsker --rho " + fixture("malformed.json") + " --sigma " +
                    fixture("diag_sigma.json"))
                .code,
            2);
  EXPECT_EQ(run_cli("verify pinsker --rho " + fixture("not_hermitian.json") + " --sigma " +
                    fixture("diag_sigma.json"))
                .code,
            2);
  EXPECT_EQ(run_cli("verify nope --rho " + fixture("diag_rho.json")).code, 2);
  EXPECT_EQ(run_cli("bounds constants --beta 1.5").code, 2);
  // rho = I/2 is not supported inside supp |0><0|.
  EXPECT_EQ(run_cli("verify pinsker --f neg_log --rho " + fixture("diag_rho.json") +
                    " --sigma " + fixture("pure_zero.json"))
                .code,
            3);
  EXPECT_EQ(run_cli("repr check --f f_p:0.5").code, 0);
}

TEST(Cli, CampaignWritesJsonlAndReplays) {
  const std::string cfg = testing::TempDir() + "qre_cfg.json";
  const std::string out = testing::TempDir() + "qre_out.jsonl";
  {
    std::ofstream f(cfg);
    f << R"({"inequalities": ["remainder"], "functions": ["neg_log"], "dims": [[2, 2]],)"
      << R"( "betas": [0.25], "trials": 3, "seed": 4, "output": ")" << out << "\"}";
  }
  const CliResult r = run_cli("campaign --config " + cfg);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("passes").get<int>(), 3);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  const auto first = nlohmann::json::parse(line);
  const CliResult replay = run_cli("replay --inequality remainder --beta 0.25 --json --seed " +
                             std::to_string(first.at("seed").get<std::uint64_t>()));
  ASSERT_EQ(replay.code, 0);
  EXPECT_EQ(nlohmann::json::parse(replay.out).dump(), first.dump());
}
