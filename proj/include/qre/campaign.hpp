// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qre/report.hpp"

namespace qre {

enum class RankPolicy { Full, Mixed };

const char* to_string(RankPolicy p);
RankPolicy rank_policy_from_string(const std::string& s);

// Every id accepted in a campaign or by `verify`/`replay`.
const std::vector<std::string>& known_inequalities();

struct CampaignConfig {
  std::vector<std::string> inequality_ids;
  std::vector<std::string> function_ids = {"neg_log"};
  std::vector<std::vector<int>> dims = {{2, 2}, {2, 2, 2}};
  std::vector<double> betas = {0.5};
  int trials = 0;
  std::uint64_t seed = 0;
  RankPolicy rank_policy = RankPolicy::Full;
  std::string output_path;
  // Check name -> absolute tolerance, replacing the built-in one.
  std::map<std::string, double> tolerance_overrides;
  int threads = 1;
};

// Keys: inequalities, functions, dims, betas, trials, seed, rank_policy,
// output, tolerances, threads. Throws InputError on anything malformed.
CampaignConfig campaign_config_from_json(const nlohmann::json& j);
CampaignConfig load_campaign_config(const std::string& path);

// Everything needed to rebuild one trial.
struct TrialSpec {
  std::string inequality_id;
  std::string function_id = "neg_log";
  std::vector<int> dims;
  std::optional<double> beta;
  std::uint64_t seed = 0;
  RankPolicy rank_policy = RankPolicy::Full;
};

// Default dims for an inequality when none are given.
std::vector<int> default_dims(const std::string& inequality_id);

// The trials of a campaign in output order. Combinations that do not apply
// (a tripartite inequality on bipartite dims, WYD ids with a non-power f)
// are left out.
std::vector<TrialSpec> enumerate_trials(const CampaignConfig& c);

// Samples the inputs from spec.seed and verifies. Library errors other than
// divergence become a failed report with the message in notes.
BoundReport run_trial(const TrialSpec& spec);

void apply_tolerance_overrides(BoundReport& r, const std::map<std::string, double>& overrides);

struct InequalityStats {
  int trials = 0;
  int passes = 0;
  int failures = 0;
  int divergent = 0;
  double worst_gap = 0.0;
  double worst_margin = 0.0;
  std::uint64_t worst_margin_seed = 0;
};

struct CampaignSummary {
  int trials = 0;
  int passes = 0;
  int failures = 0;
  int divergent = 0;
  double worst_gap = 0.0;
  double worst_margin = 0.0;
  std::map<std::string, InequalityStats> per_inequality;
  std::vector<TrialSpec> failed;
  nlohmann::ordered_json to_json() const;
};

// Runs every trial, writing one JSON report per line to `jsonl` (if given)
// in enumeration order, independent of the thread count.
CampaignSummary run_campaign(const CampaignConfig& c, std::ostream* jsonl);

// Smallest check margin rhs - lhs of a report; 0 when it has no checks.
double worst_margin(const BoundReport& r);

}  // namespace qre
