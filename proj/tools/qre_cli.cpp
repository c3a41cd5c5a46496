// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

// qre: verify entropy inequalities on given matrices, run seeded campaigns,
// print bound constants and check integral representations.
//
// Exit codes: 0 pass, 1 inequality violated, 2 input error, 3 divergent entropy.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qre/bounds.hpp"
#include "qre/campaign.hpp"
#include "qre/entropy.hpp"
#include "qre/errors.hpp"
#include "qre/matrix_io.hpp"
#include "qre/ssa.hpp"

namespace {

using namespace qre;

constexpr int kPass = 0;
constexpr int kViolated = 1;
constexpr int kInputError = 2;
constexpr int kDivergent = 3;

int exit_code(const BoundReport& r) {
  if (r.divergent) return kDivergent;
  return r.passed ? kPass : kViolated;
}

std::string join_dims(const std::vector<int>& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s;
}

void print_report(const BoundReport& r, bool json) {
  if (json) {
    std::cout << r.to_json().dump(2) << '\n';
    return;
  }
  const char* status = r.divergent ? "DIVERGENT" : (r.passed ? "PASS" : "FAIL");
  std::cout << r.inequality_id << " f=" << r.function_id;
  if (r.beta) std::cout << " beta=" << *r.beta;
  std::cout << " dims=" << join_dims(r.dims) << ": " << status << '\n';
  std::cout.precision(12);
  for (const Check& c : r.checks) {
    std::cout << "  " << c.name << ": lhs=" << c.lhs << " rhs=" << c.rhs
              << " margin=" << c.margin() << (c.passed() ? " ok" : " VIOLATED") << '\n';
  }
  for (const std::string& n : r.notes) std::cout << "  note: " << n << '\n';
}

// Splits a square dimension into n equal factors when possible.
std::vector<int> infer_dims(const std::string& id, int dim) {
  const std::vector<int> def = default_dims(id);
  if (def.size() <= 1) return {dim};
  const int n = static_cast<int>(def.size());
  const int side = static_cast<int>(std::lround(std::pow(dim, 1.0 / n)));
  int prod = 1;
  for (int i = 0; i < n; ++i) prod *= side;
  if (prod != dim) {
    throw InputError("cannot split dimension " + std::to_string(dim) + " into " +
                     std::to_string(n) + " equal factors; pass --dims");
  }
  return std::vector<int>(n, side);
}

struct VerifyArgs {
  std::string inequality;
  std::string f = "neg_log";
  double beta = 0.5;
  std::vector<std::string> rho;
  std::vector<std::string> sigma;
  std::vector<double> weights;
  std::string k;
  std::string v;
  std::vector<int> dims;
  std::uint64_t seed = 0;
  bool json = false;
};

Matrix identity(int d) { return Matrix::Identity(d, d); }

DensityMatrix load_state(const std::string& path) {
  return DensityMatrix(read_matrix_file(path));
}

const std::string& single(const std::vector<std::string>& v, const char* what) {
  if (v.size() != 1) throw InputError(std::string("expected exactly one --") + what);
  return v.front();
}

BoundReport run_verify(const VerifyArgs& a) {
  const std::string& id = a.inequality;
  if (id == "equality") {
    TrialSpec t;
    t.inequality_id = id;
    t.seed = a.seed;
    return run_trial(t);
  }
  if (a.rho.empty()) throw InputError("--rho is required");
  const OperatorConvexFunction f = function_from_id(a.f);
  auto need_p = [&]() {
    const auto p = f_p_exponent(a.f);
    if (!p) throw InputError(id + " needs an f_p:<p> function");
    return *p;
  };

  if (id == "joint_convexity" || id == "wyd_concavity") {
    if (a.rho.size() != a.sigma.size() || a.rho.size() != a.weights.size()) {
      throw InputError("ensembles need matching --rho, --sigma and --weights lists");
    }
    Ensemble e;
    e.weights = a.weights;
    for (std::size_t j = 0; j < a.rho.size(); ++j) {
      e.rhos.push_back(load_state(a.rho[j]));
      e.sigmas.push_back(load_state(a.sigma[j]));
    }
    const int d = e.rhos.front().dim();
    const Matrix k = a.k.empty() ? identity(d) : read_matrix_file(a.k);
    if (id == "joint_convexity") return verify_joint_convexity(f, k, e, a.beta);
    return verify_wyd_concavity(need_p(), k, e, a.beta);
  }

  const DensityMatrix rho = load_state(single(a.rho, "rho"));
  const std::vector<int> dims = a.dims.empty() ? infer_dims(id, rho.dim()) : a.dims;
  const FactorizedSpace space(dims);
  if (space.dim() != rho.dim()) throw InputError("--dims do not multiply to the matrix size");

  if (id == "ssa") return verify_ssa(rho, a.beta, space);
  if (id == "wyd_skew") {
    if (a.k.empty()) throw InputError("wyd_skew needs --k");
    return verify_wyd_skew(need_p(), read_matrix_file(a.k), rho);
  }
  const DensityMatrix sigma = load_state(single(a.sigma, "sigma"));
  if (id == "monotonicity" || id == "remainder" || id == "petz") {
    if (dims.size() != 2) throw InputError(id + " needs two factors");
    const Reduction red{space, {0}};
    const Matrix k1 = a.k.empty() ? identity(dims[0]) : read_matrix_file(a.k);
    const Matrix v = a.v.empty() ? identity(dims[1]) : read_matrix_file(a.v);
    BoundReport r;
    if (id == "monotonicity") r = verify_monotonicity(f, k1, v, rho, sigma, red);
    if (id == "remainder") r = verify_monotonicity_bound(f, k1, v, rho, sigma, red, a.beta);
    if (id == "petz") r = verify_petz_bound(f, k1, v, rho, sigma, red);
    return r;
  }
  if (id == "pinsker") {
    const Matrix u = a.k.empty() ? identity(rho.dim()) : read_matrix_file(a.k);
    return pinsker_check(f, u, rho, sigma);
  }
  if (id == "classical_reduction") return verify_classical_reduction(f, rho, sigma);
  if (dims.size() != 3) throw InputError(id + " needs three factors");
  if (id == "cauchy_schwarz") return verify_cauchy_schwarz(rho, sigma, space);
  if (id == "operator_wyd") return verify_operator_wyd(need_p(), rho, sigma, a.beta, space);
  if (id.rfind("operator_ssa:", 0) == 0) {
    return verify_operator_ssa(f, rho, sigma, a.beta, ssa_variant_from_string(id.substr(13)),
                               space);
  }
  throw InputError("unknown inequality id '" + id + "'");
}

int run_campaign_cmd(const std::string& config_path, const std::string& output_override) {
  CampaignConfig c = load_campaign_config(config_path);
  if (!output_override.empty()) c.output_path = output_override;
  const bool to_stdout = c.output_path.empty() || c.output_path == "-";
  std::ofstream file;
  if (!to_stdout) {
    file.open(c.output_path, std::ios::binary);
    if (!file) throw InputError("cannot write '" + c.output_path + "'");
  }
  const CampaignSummary s = run_campaign(c, to_stdout ? &std::cout : &file);
  std::ostream& out = to_stdout ? std::cerr : std::cout;
  out << s.to_json().dump(2) << '\n';
  for (const TrialSpec& t : s.failed) {
    std::cerr << "FAILED " << t.inequality_id << " seed=" << t.seed << "  replay: qre replay --inequality "
              << t.inequality_id << " --f " << t.function_id << " --dims " << join_dims(t.dims);
    if (t.beta) std::cerr << " --beta " << *t.beta;
    std::cerr << " --rank-policy " << to_string(t.rank_policy) << " --seed " << t.seed << '\n';
  }
  return s.failures > 0 ? kViolated : kPass;
}

int run_constants(const std::string& fid, double beta, std::optional<double> p, double norm_k,
                  double d) {
  const OperatorConvexFunction f = function_from_id(fid);
  const BoundConstants k = bound_constants(f, beta, norm_k, d);
  nlohmann::ordered_json j;
  j["function_id"] = f.id();
  j["beta"] = beta;
  j["alpha1"] = k.alpha1;
  j["alpha2"] = k.alpha2;
  j["alpha"] = k.alpha;
  j["C"] = k.C;
  j["c"] = k.c;
  j["norm_K"] = k.norm_K;
  j["D"] = k.D;
  j["M"] = k.M;
  j["N"] = k.N;
  j["T_star"] = k.T_star;
  j["alpha_lower_branch"] = beta * (1.0 - beta) / (1.0 + 2.0 * k.c * (1.0 - beta));
  j["alpha_upper_branch"] = (1.0 - beta) / (2.0 * (1.0 + k.c));
  if (f.id() == "neg_log") {
    j["N_explicit"] = explicit_N(ExplicitKind::Log, beta, 0.0, norm_k, d);
  } else if (p || f_p_exponent(f.id())) {
    const double pp = p ? *p : *f_p_exponent(f.id());
    if (pp > 0.0 && pp < 1.0) j["N_explicit"] = explicit_N(ExplicitKind::Power, beta, pp, norm_k, d);
  }
  std::cout << j.dump(2) << '\n';
  return kPass;
}

int run_repr_check(const std::string& fid, double tol) {
  const OperatorConvexFunction f = function_from_id(fid);
  if (!f.has_representation()) throw InputError(fid + " has no integral representation");
  std::vector<double> xs;
  for (int i = 0; i <= 20; ++i) xs.push_back(std::pow(10.0, -1.0 + i / 10.0));
  const auto rows = representation_check(f, xs);
  nlohmann::ordered_json j;
  j["function_id"] = f.id();
  j["a"] = f.loewner_a();
  j["b"] = f.loewner_b();
  double worst = 0.0;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"x", r.x}, {"value", r.value}, {"quadrature", r.quadrature},
                   {"abs_error", r.abs_error}});
    worst = std::max(worst, r.abs_error);
  }
  j["points"] = arr;
  j["max_abs_error"] = worst;
  j["tolerance"] = tol;
  j["passed"] = worst < tol;
  std::cout << j.dump(2) << '\n';
  return worst < tol ? kPass : kViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-relative entropy inequality checker"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check one inequality on matrices from files");
  verify->add_option("inequality", va.inequality, "Inequality id")->required();
  verify->add_option("--f", va.f, "Function id (neg_log, f_p:<p>, neg_power:<p>, T(<id>))");
  verify->add_option("--beta", va.beta, "Exponent beta in (0, 1)");
  verify->add_option("--rho", va.rho, "State file(s)");
  verify->add_option("--sigma", va.sigma, "Second state file(s)");
  verify->add_option("--weights", va.weights, "Ensemble weights")->delimiter(',');
  verify->add_option("--k", va.k, "Weight operator K (K_1, U or skew observable)");
  verify->add_option("--v", va.v, "Unitary V on the traced factor");
  verify->add_option("--dims", va.dims, "Factor dimensions a,b[,c]")->delimiter(',');
  verify->add_option("--seed", va.seed, "Seed for the equality study");
  verify->add_flag("--json", va.json, "Print the report as JSON");

  std::string config;
  std::string output;
  auto* campaign = app.add_subcommand("campaign", "Run a seeded campaign from a JSON config");
  campaign->add_option("--config", config, "Config file")->required();
  campaign->add_option("--output", output, "JSONL output path ('-' for stdout)");

  auto* bounds = app.add_subcommand("bounds", "Bound constants");
  bounds->require_subcommand(1);
  std::string cf = "neg_log";
  double cbeta = 0.5;
  std::optional<double> cp;
  double norm_k = 1.0;
  double cd = 1.0;
  auto* constants = bounds->add_subcommand("constants", "Print alpha1, alpha2, alpha, C, c, N");
  constants->add_option("--f", cf, "Function id");
  constants->add_option("--beta", cbeta, "Exponent beta in (0, 1)");
  constants->add_option("--p", cp, "Power p for the explicit power-family N");
  constants->add_option("--norm-k", norm_k, "Bound on ||K||");
  constants->add_option("--d", cd, "Bound on the modular operator norm");

  auto* repr = app.add_subcommand("repr", "Integral representation");
  repr->require_subcommand(1);
  std::string rf = "neg_log";
  double rtol = 1e-6;
  auto* check = repr->add_subcommand("check", "Compare quadrature with f on a log grid");
  check->add_option("--f", rf, "Function id");
  check->add_option("--tol", rtol, "Absolute tolerance");

  TrialSpec rs;
  std::string rank = "full";
  std::optional<double> rbeta;
  bool rjson = false;
  auto* replay = app.add_subcommand("replay", "Re-run one campaign trial");
  replay->add_option("--inequality", rs.inequality_id, "Inequality id")->required();
  replay->add_option("--seed", rs.seed, "Trial seed from the report")->required();
  replay->add_option("--f", rs.function_id, "Function id");
  replay->add_option("--dims", rs.dims, "Factor dimensions")->delimiter(',');
  replay->add_option("--beta", rbeta, "Exponent beta");
  replay->add_option("--rank-policy", rank, "full or mixed");
  replay->add_flag("--json", rjson, "Print the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (*verify) {
      const BoundReport r = run_verify(va);
      print_report(r, va.json);
      return exit_code(r);
    }
    if (*campaign) return run_campaign_cmd(config, output);
    if (*constants) return run_constants(cf, cbeta, cp, norm_k, cd);
    if (*check) return run_repr_check(rf, rtol);
    if (*replay) {
      if (rs.dims.empty()) rs.dims = default_dims(rs.inequality_id);
      rs.beta = rbeta;
      rs.rank_policy = rank_policy_from_string(rank);
      const BoundReport r = run_trial(rs);
      print_report(r, rjson);
      return exit_code(r);
    }
  } catch (const DivergentEntropy& e) {
    std::cerr << "divergent: " << e.what() << '\n';
    return kDivergent;
  } catch (const SingularArgument& e) {
    std::cerr << "divergent: " << e.what() << '\n';
    return kDivergent;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
