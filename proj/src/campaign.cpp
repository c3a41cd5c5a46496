// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#include "qre/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <thread>

#include "qre/bounds.hpp"
#include "qre/entropy.hpp"
#include "qre/errors.hpp"
#include "qre/random.hpp"
#include "qre/ssa.hpp"

namespace qre {

namespace {

constexpr double kMixedRate = 0.2;
const std::vector<double> kEqualityEps = {1e-3, 1e-2, 1e-1};

enum class Shape { Bipartite, Any, Tripartite, None };

struct Kind {
  Shape shape;
  bool uses_function;
  bool uses_beta;
};

Kind kind_of(const std::string& id) {
  if (id == "monotonicity") return {Shape::Bipartite, true, false};
  if (id == "remainder") return {Shape::Bipartite, true, true};
  if (id == "petz") return {Shape::Bipartite, true, false};
  if (id == "joint_convexity") return {Shape::Any, true, true};
  if (id == "wyd_concavity") return {Shape::Any, true, true};
  if (id == "wyd_skew") return {Shape::Any, true, false};
  if (id == "pinsker") return {Shape::Any, true, false};
  if (id == "classical_reduction") return {Shape::Any, true, false};
  if (id == "ssa") return {Shape::Tripartite, false, true};
  if (id.rfind("operator_ssa:", 0) == 0) {
    ssa_variant_from_string(id.substr(13));
    return {Shape::Tripartite, true, true};
  }
  if (id == "operator_wyd") return {Shape::Tripartite, true, true};
  if (id == "cauchy_schwarz") return {Shape::Tripartite, false, false};
  if (id == "equality") return {Shape::None, false, false};
  throw InputError("unknown inequality id '" + id + "'");
}

bool shape_fits(Shape s, const std::vector<int>& dims) {
  switch (s) {
    case Shape::Bipartite:
      return dims.size() == 2;
    case Shape::Tripartite:
      return dims.size() == 3;
    case Shape::Any:
      return !dims.empty();
    case Shape::None:
      return true;
  }
  return false;
}

// WYD ids need f_p; operator WYD and skew information need p in (0, 1).
bool function_fits(const std::string& id, const std::string& fid) {
  if (id != "wyd_concavity" && id != "wyd_skew" && id != "operator_wyd") return true;
  const auto p = f_p_exponent(fid);
  if (!p) return false;
  if (id == "wyd_concavity") return true;
  return *p > 0.0 && *p < 1.0;
}

int total_dim(const std::vector<int>& dims) {
  int d = 1;
  for (int x : dims) d *= x;
  return d;
}

class Sampler {
 public:
  Sampler(std::uint64_t seed, RankPolicy policy) : rng_(seed), policy_(policy) {}

  DensityMatrix state(int dim) {
    int rank = dim;
    if (policy_ == RankPolicy::Mixed && dim > 1 && rng_.uniform() < kMixedRate) {
      rank = rng_.uniform_int(1, dim - 1);
    }
    return random_density(dim, rank, rng_);
  }
  DensityMatrix full_rank_state(int dim) { return random_density(dim, dim, rng_); }
  Rng& rng() { return rng_; }

 private:
  Rng rng_;
  RankPolicy policy_;
};

Ensemble sample_ensemble(Sampler& s, int dim, int n) {
  Ensemble e;
  const RealVector w = random_probabilities(n, s.rng());
  for (int j = 0; j < n; ++j) {
    e.weights.push_back(w(j));
    e.rhos.push_back(s.state(dim));
    e.sigmas.push_back(s.state(dim));
  }
  return e;
}

BoundReport equality_report(std::uint64_t seed) {
  BoundReport r;
  r.inequality_id = "equality";
  r.function_id = "neg_log";
  const std::vector<EqualityRow> rows = equality_suite(seed, kEqualityEps);
  nlohmann::ordered_json table = nlohmann::ordered_json::array();
  for (const EqualityRow& row : rows) {
    table.push_back({{"inequality_id", row.inequality_id},
                     {"eps", row.eps},
                     {"gap", row.gap},
                     {"residual", row.residual}});
  }
  const std::size_t block = kEqualityEps.size() + 1;
  for (std::size_t i = 0; i < rows.size(); i += block) {
    const std::string& id = rows[i].inequality_id;
    r.add(make_check(id + "_exact_gap", std::abs(rows[i].gap), 0.0, 0.0, 1e-10));
    r.add(make_check(id + "_exact_residual", rows[i].residual, 0.0, 0.0, 1e-8));
    double gap_step = std::numeric_limits<double>::infinity();
    double res_step = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < block; ++k) {
      gap_step = std::min(gap_step, rows[i + k].gap - rows[i + k - 1].gap);
      res_step = std::min(res_step, rows[i + k].residual - rows[i + k - 1].residual);
    }
    r.add(make_check(id + "_gap_increasing", 0.0, gap_step, 0.0, 0.0));
    r.add(make_check(id + "_residual_increasing", 0.0, res_step, 0.0, 0.0));
  }
  r.constants["rows"] = table;
  return r;
}

BoundReport dispatch(const TrialSpec& t) {
  Sampler s(t.seed, t.rank_policy);
  const std::string& id = t.inequality_id;
  const double beta = t.beta.value_or(0.5);
  const int dim = total_dim(t.dims);

  if (id == "equality") return equality_report(t.seed);
  if (id == "ssa") {
    const FactorizedSpace abc(t.dims);
    return verify_ssa(s.state(dim), beta, abc);
  }
  if (id == "cauchy_schwarz") {
    const FactorizedSpace abc(t.dims);
    const DensityMatrix rho = s.full_rank_state(dim);
    return verify_cauchy_schwarz(rho, s.state(t.dims[0] * t.dims[1]), abc);
  }

  const OperatorConvexFunction f = function_from_id(t.function_id);
  if (id == "monotonicity" || id == "remainder" || id == "petz") {
    const Reduction red{FactorizedSpace(t.dims), {0}};
    const DensityMatrix rho = s.state(dim);
    const DensityMatrix sigma = s.state(dim);
    const Matrix k1 = random_contraction(t.dims[0], s.rng());
    const Matrix v = random_unitary(t.dims[1], s.rng());
    if (id == "monotonicity") return verify_monotonicity(f, k1, v, rho, sigma, red);
    if (id == "remainder") return verify_monotonicity_bound(f, k1, v, rho, sigma, red, beta);
    return verify_petz_bound(f, k1, v, rho, sigma, red);
  }
  if (id == "joint_convexity" || id == "wyd_concavity") {
    const Ensemble e = sample_ensemble(s, dim, 3);
    const Matrix k = random_contraction(dim, s.rng());
    if (id == "joint_convexity") return verify_joint_convexity(f, k, e, beta);
    return verify_wyd_concavity(*f_p_exponent(t.function_id), k, e, beta);
  }
  if (id == "wyd_skew") {
    const DensityMatrix rho = s.state(dim);
    return verify_wyd_skew(*f_p_exponent(t.function_id), random_hermitian(dim, s.rng()), rho);
  }
  if (id == "pinsker" || id == "classical_reduction") {
    const DensityMatrix rho = s.state(dim);
    const DensityMatrix sigma = s.state(dim);
    if (id == "classical_reduction") return verify_classical_reduction(f, rho, sigma);
    return pinsker_check(f, random_unitary(dim, s.rng()), rho, sigma);
  }
  const FactorizedSpace abc(t.dims);
  const DensityMatrix tri = s.state(dim);
  const DensityMatrix bi = s.state(t.dims[0] * t.dims[1]);
  if (id == "operator_wyd") {
    return verify_operator_wyd(*f_p_exponent(t.function_id), tri, bi, beta, abc);
  }
  return verify_operator_ssa(f, tri, bi, beta, ssa_variant_from_string(id.substr(13)), abc);
}

}  // namespace

const char* to_string(RankPolicy p) { return p == RankPolicy::Full ? "full" : "mixed"; }

RankPolicy rank_policy_from_string(const std::string& s) {
  if (s == "full") return RankPolicy::Full;
  if (s == "mixed") return RankPolicy::Mixed;
  throw InputError("rank_policy must be 'full' or 'mixed', got '" + s + "'");
}

const std::vector<std::string>& known_inequalities() {
  static const std::vector<std::string> ids = {
      "monotonicity",           "remainder",           "petz",
      "joint_convexity",        "wyd_concavity",       "wyd_skew",
      "pinsker",                "classical_reduction", "ssa",
      "operator_ssa:p",         "operator_ssa:q",      "operator_ssa:transposed_p",
      "operator_ssa:transposed_q", "operator_wyd",     "cauchy_schwarz",
      "equality"};
  return ids;
}

CampaignConfig campaign_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("campaign config must be a JSON object");
  static const std::vector<std::string> keys = {"inequalities", "functions", "dims",
                                                "betas",        "trials",    "seed",
                                                "rank_policy",  "output",    "tolerances",
                                                "threads"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw InputError("unknown campaign config key '" + key + "'");
    }
  }
  CampaignConfig c;
  try {
    if (!j.contains("inequalities") || !j.contains("trials")) {
      throw InputError("campaign config needs 'inequalities' and 'trials'");
    }
    c.inequality_ids = j.at("inequalities").get<std::vector<std::string>>();
    if (j.contains("functions")) c.function_ids = j.at("functions").get<std::vector<std::string>>();
    if (j.contains("dims")) c.dims = j.at("dims").get<std::vector<std::vector<int>>>();
    if (j.contains("betas")) c.betas = j.at("betas").get<std::vector<double>>();
    c.trials = j.at("trials").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("rank_policy")) {
      c.rank_policy = rank_policy_from_string(j.at("rank_policy").get<std::string>());
    }
    if (j.contains("output")) c.output_path = j.at("output").get<std::string>();
    if (j.contains("tolerances")) {
      c.tolerance_overrides = j.at("tolerances").get<std::map<std::string, double>>();
    }
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("campaign config: ") + e.what());
  }
  if (c.trials < 1) throw InputError("campaign config: trials must be at least 1");
  if (c.threads < 1) throw InputError("campaign config: threads must be at least 1");
  if (c.inequality_ids.empty()) throw InputError("campaign config: no inequalities");
  for (const std::string& id : c.inequality_ids) kind_of(id);
  for (const std::string& f : c.function_ids) function_from_id(f);
  for (double b : c.betas) {
    if (!(b > 0.0 && b < 1.0)) throw InputError("campaign config: betas must lie in (0, 1)");
  }
  for (const auto& d : c.dims) {
    if (d.empty() || std::any_of(d.begin(), d.end(), [](int x) { return x < 1; })) {
      throw InputError("campaign config: dims entries must be non-empty lists of positive ints");
    }
  }
  return c;
}

CampaignConfig load_campaign_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open campaign config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("campaign config '" + path + "': " + e.what());
  }
  return campaign_config_from_json(j);
}

std::vector<int> default_dims(const std::string& inequality_id) {
  switch (kind_of(inequality_id).shape) {
    case Shape::Bipartite:
      return {2, 2};
    case Shape::Tripartite:
      return {2, 2, 2};
    case Shape::Any:
      return {2};
    case Shape::None:
      return {};
  }
  return {};
}

std::vector<TrialSpec> enumerate_trials(const CampaignConfig& c) {
  std::vector<TrialSpec> out;
  std::uint64_t index = 0;
  auto emit = [&](TrialSpec t) {
    for (int i = 0; i < c.trials; ++i) {
      t.seed = mix_seed(c.seed, index++);
      out.push_back(t);
    }
  };
  for (const std::string& id : c.inequality_ids) {
    const Kind k = kind_of(id);
    const std::vector<std::string> fids =
        k.uses_function ? c.function_ids : std::vector<std::string>{"neg_log"};
    const std::vector<std::vector<int>> dims =
        k.shape == Shape::None ? std::vector<std::vector<int>>{{}} : c.dims;
    for (const std::string& fid : fids) {
      if (!function_fits(id, fid)) continue;
      for (const auto& d : dims) {
        if (!shape_fits(k.shape, d)) continue;
        TrialSpec t;
        t.inequality_id = id;
        t.function_id = fid;
        t.dims = d;
        t.rank_policy = c.rank_policy;
        if (k.uses_beta) {
          for (double b : c.betas) {
            t.beta = b;
            emit(t);
          }
        } else {
          emit(t);
        }
      }
    }
  }
  return out;
}

BoundReport run_trial(const TrialSpec& spec) {
  const Kind k = kind_of(spec.inequality_id);
  BoundReport r;
  try {
    if (!shape_fits(k.shape, spec.dims)) {
      throw InputError("dims do not fit inequality '" + spec.inequality_id + "'");
    }
    if (!function_fits(spec.inequality_id, spec.function_id)) {
      throw InputError("function '" + spec.function_id + "' does not apply to '" +
                       spec.inequality_id + "'");
    }
    r = dispatch(spec);
  } catch (const InputError&) {
    throw;
  } catch (const DivergentEntropy& e) {
    r = BoundReport{};
    r.mark_divergent(e.what());
  } catch (const Error& e) {
    r = BoundReport{};
    r.passed = false;
    r.notes.push_back(std::string("error: ") + e.what());
  }
  r.inequality_id = spec.inequality_id;
  if (k.uses_function) r.function_id = spec.function_id;
  if (r.function_id.empty()) r.function_id = spec.function_id;
  r.dims = spec.dims;
  r.seed = spec.seed;
  if (k.uses_beta) r.beta = spec.beta.value_or(0.5);
  return r;
}

void apply_tolerance_overrides(BoundReport& r, const std::map<std::string, double>& overrides) {
  if (overrides.empty()) return;
  bool passed = true;
  for (Check& c : r.checks) {
    const auto it = overrides.find(c.name);
    if (it != overrides.end()) c.tolerance = it->second;
    passed = passed && c.passed();
  }
  const bool errored = std::any_of(r.notes.begin(), r.notes.end(), [](const std::string& n) {
    return n.rfind("error: ", 0) == 0;
  });
  r.passed = passed && !errored;
}

double worst_margin(const BoundReport& r) {
  if (r.checks.empty()) return 0.0;
  double m = std::numeric_limits<double>::infinity();
  for (const Check& c : r.checks) m = std::min(m, c.margin());
  return m;
}

nlohmann::ordered_json CampaignSummary::to_json() const {
  nlohmann::ordered_json j;
  j["trials"] = trials;
  j["passes"] = passes;
  j["failures"] = failures;
  j["divergent"] = divergent;
  j["worst_gap"] = worst_gap;
  j["worst_margin"] = worst_margin;
  nlohmann::ordered_json per = nlohmann::ordered_json::object();
  for (const auto& [id, s] : per_inequality) {
    per[id] = {{"trials", s.trials},       {"passes", s.passes},
               {"failures", s.failures},   {"divergent", s.divergent},
               {"worst_gap", s.worst_gap}, {"worst_margin", s.worst_margin},
               {"worst_margin_seed", s.worst_margin_seed}};
  }
  j["per_inequality"] = per;
  nlohmann::ordered_json failed_j = nlohmann::ordered_json::array();
  for (const TrialSpec& t : failed) {
    nlohmann::ordered_json f = {{"inequality_id", t.inequality_id},
                                {"function_id", t.function_id},
                                {"dims", t.dims},
                                {"seed", t.seed}};
    if (t.beta) f["beta"] = *t.beta;
    failed_j.push_back(f);
  }
  j["failed"] = failed_j;
  return j;
}

CampaignSummary run_campaign(const CampaignConfig& c, std::ostream* jsonl) {
  if (c.trials < 1) throw InputError("trials must be at least 1");
  const std::vector<TrialSpec> trials = enumerate_trials(c);
  std::vector<BoundReport> reports(trials.size());

  const int workers = std::max(1, std::min<int>(c.threads, static_cast<int>(trials.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < trials.size(); i = next++) {
      reports[i] = run_trial(trials[i]);
      apply_tolerance_overrides(reports[i], c.tolerance_overrides);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  CampaignSummary s;
  bool first = true;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const BoundReport& r = reports[i];
    if (jsonl) *jsonl << r.to_json().dump() << '\n';
    InequalityStats& st = s.per_inequality[r.inequality_id];
    ++s.trials;
    ++st.trials;
    if (r.divergent) {
      ++s.divergent;
      ++st.divergent;
      continue;
    }
    const double m = worst_margin(r);
    if (r.passed) {
      ++s.passes;
      ++st.passes;
    } else {
      ++s.failures;
      ++st.failures;
      s.failed.push_back(trials[i]);
    }
    if (st.passes + st.failures == 1 || r.gap < st.worst_gap) st.worst_gap = r.gap;
    if (st.passes + st.failures == 1 || m < st.worst_margin) {
      st.worst_margin = m;
      st.worst_margin_seed = r.seed;
    }
    if (first || r.gap < s.worst_gap) s.worst_gap = r.gap;
    if (first || m < s.worst_margin) s.worst_margin = m;
    first = false;
  }
  return s;
}

}  // namespace qre
