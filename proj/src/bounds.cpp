// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#include "qre/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qre/entropy.hpp"
#include "qre/errors.hpp"
#include "qre/matrix_io.hpp"
#include "qre/modular.hpp"

namespace qre {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kReportRel = 1e-8;
constexpr double kReportAbs = 1e-12;
constexpr double kGapAbs = 1e-9;

void require_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidParameter("beta must lie in (0, 1)");
}

double clip(double gap) { return std::max(gap, 0.0); }

std::string digest_of(std::initializer_list<const Matrix*> ms) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const Matrix* m : ms) h = digest(*m, h);
  return hex_digest(h);
}

// 20 points spread over (1, 1e6) in log scale.
std::vector<double> remainder_grid() {
  std::vector<double> ts;
  for (int i = 0; i < 20; ++i) ts.push_back(std::pow(10.0, 6.0 * (i + 0.5) / 20.0));
  return ts;
}

// Adds the optimized and grid remainder checks; returns the optimum.
TOptimum add_remainder_checks(BoundReport& r, double lhs,
                              const std::function<double(double)>& rhs) {
  const TOptimum opt = optimize_T(rhs);
  r.add(make_check("remainder_at_optimal_T", lhs, opt.value, kReportRel, kReportAbs));
  Check worst;
  bool first = true;
  for (double t : remainder_grid()) {
    Check c = make_check("remainder_grid", lhs, rhs(t), kReportRel, kReportAbs);
    if (first || c.margin() + c.tolerance < worst.margin() + worst.tolerance) worst = c;
    first = false;
  }
  r.add(worst);
  r.constants["T_opt"] = opt.T;
  r.constants["T_opt_at_boundary"] = opt.at_boundary;
  return opt;
}

}  // namespace

RemainderExponents remainder_exponents(double beta) {
  require_beta(beta);
  RemainderExponents e;
  if (beta <= 0.5) {
    e.alpha1 = beta;
    e.alpha2 = 0.5 * (1.0 - beta) + beta * beta / (2.0 * (1.0 - beta));
  } else {
    e.alpha1 = 1.0 - beta;
    e.alpha2 = beta;
  }
  return e;
}

double bound_alpha(double beta, double c) {
  require_beta(beta);
  if (beta <= 0.5) return beta * (1.0 - beta) / (1.0 + 2.0 * c * (1.0 - beta));
  return (1.0 - beta) / (2.0 * (1.0 + c));
}

nlohmann::ordered_json BoundConstants::to_json() const {
  return {{"beta", beta},     {"alpha1", alpha1}, {"alpha2", alpha2}, {"alpha", alpha},
          {"C", C},           {"c", c},           {"norm_K", norm_K}, {"D", D},
          {"M", M},           {"N", N},           {"T_star", T_star}};
}

BoundConstants bound_constants(double beta, RegularityConstants rc, double norm_K, double D) {
  const RemainderExponents e = remainder_exponents(beta);
  BoundConstants k;
  k.beta = beta;
  k.alpha1 = e.alpha1;
  k.alpha2 = e.alpha2;
  k.C = rc.C;
  k.c = rc.c;
  k.norm_K = norm_K;
  k.D = D;
  const double a = e.alpha1;
  const double b = e.alpha2 + rc.c;
  const double s = a + b;
  k.alpha = a / (2.0 * s);
  const double A = 2.0 * (norm_K / beta + D / (1.0 - beta));
  const double shape = std::pow(b / a, a / s) + std::pow(a / b, b / s);
  k.M = std::sin(beta * kPi) / kPi * std::pow(A, b / s) * std::pow(rc.C, a / (2.0 * s)) * shape;
  k.N = std::pow(k.M, -1.0 / k.alpha);
  k.T_star = std::pow(a * A / (b * std::sqrt(rc.C)), 1.0 / s);
  return k;
}

BoundConstants bound_constants(const OperatorConvexFunction& f, double beta, double norm_K,
                               double D) {
  return bound_constants(beta, f.regularity(beta), norm_K, D);
}

double optimal_T(const BoundConstants& k, double gap) {
  const double a = k.alpha1;
  const double b = k.alpha2 + k.c;
  const double A = 2.0 * (k.norm_K / k.beta + k.D / (1.0 - k.beta));
  return std::pow(a * A / (b * std::sqrt(k.C * gap)), 1.0 / (a + b));
}

double explicit_N(ExplicitKind kind, double beta, double p, double norm_K, double D) {
  require_beta(beta);
  const double sb = std::sin(beta * kPi);
  const double bb = beta * (1.0 - beta);
  if (kind == ExplicitKind::Log) {
    if (beta <= 0.5) {
      const double q = 1.0 - 2.0 * beta + 2.0 * beta * beta;
      return std::pow(kPi * q * beta / sb, 1.0 / bb) *
             std::pow(norm_K + beta / (1.0 - beta) * D, -q / bb) * std::pow(2.0, -q / bb) *
             std::pow(q / (2.0 * (1.0 - beta)), -2.0);
    }
    return std::pow(kPi * bb / sb, 2.0 / (1.0 - beta)) *
           std::pow((1.0 - beta) / beta * norm_K + D, -2.0 * beta / (1.0 - beta)) *
           std::pow(2.0, -2.0 * beta / (1.0 - beta)) * std::pow(beta, -2.0);
  }
  if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("explicit power N needs p in (0, 1)");
  const double sp = std::sin(p * kPi) / kPi;
  if (beta <= 0.5) {
    const double q = p * (1.0 - beta) + 1.0 - 2.0 * beta + 2.0 * beta * beta;
    const double e = q / bb;
    const double r = 1.0 + p * (1.0 - beta);
    return std::pow(norm_K + beta / (1.0 - beta) * D, -e) * std::pow(2.0, -e) * sp *
           std::pow(kPi * beta * q / (r * sb), r / bb) * std::pow(q / (2.0 * (1.0 - beta)), -2.0);
  }
  const double q = 2.0 * beta * beta + p * (1.0 - beta);
  const double e = q / bb;
  const double r = 2.0 * beta + p * (1.0 - beta);
  return std::pow((1.0 - beta) / beta * norm_K + D, -e) * std::pow(2.0, -e) * sp *
         std::pow(kPi * (1.0 - beta) * q / (r * sb), r / bb) * std::pow(q / (2.0 * beta), -2.0);
}

double thm42_rhs(const OperatorConvexFunction& f, const RemainderInputs& in, double T) {
  const RemainderExponents e = remainder_exponents(in.beta);
  if (!(T > 0.0)) throw InvalidParameter("T must be positive");
  const double A = 2.0 * (in.norm_K / in.beta + in.norm_Delta / (1.0 - in.beta));
  double rhs = A * std::pow(T, -e.alpha1);
  if (T >= 1.0) {
    const double c_t = regularity_constant(f, T, in.beta).C;
    rhs += std::pow(T, e.alpha2) * std::sqrt(c_t * clip(in.gap));
  }
  return rhs;
}

TOptimum optimize_T(const std::function<double(double)>& rhs, double lo, double hi,
                    double rel_tol) {
  double a = std::log(lo);
  double b = std::log(hi);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = rhs(std::exp(c));
  double fd = rhs(std::exp(d));
  while (b - a > rel_tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = rhs(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = rhs(std::exp(d));
    }
  }
  TOptimum out;
  out.T = std::exp(0.5 * (a + b));
  out.value = rhs(out.T);
  // Endpoints are candidates too: the search interval is closed.
  for (double t : {lo, hi}) {
    const double v = rhs(t);
    if (v < out.value) {
      out.value = v;
      out.T = t;
    }
  }
  const double span = std::log(hi) - std::log(lo);
  out.at_boundary = std::log(out.T) - std::log(lo) < 1e-3 * span ||
                    std::log(hi) - std::log(out.T) < 1e-3 * span;
  return out;
}

MonotonicityInstance analyze_monotonicity(const OperatorConvexFunction& f, const Matrix& K1,
                                          const Matrix& V, const PositiveOperator& rho,
                                          const PositiveOperator& sigma, const Reduction& red) {
  const PositiveOperator rho1(hermitian_part(red.trace_out(rho.matrix())));
  const PositiveOperator sigma1(hermitian_part(red.trace_out(sigma.matrix())));
  const Matrix k = red.lift(K1, V);
  MonotonicityInstance out;
  out.full = quasi_relative_entropy(f, k, rho, sigma);
  out.reduced = quasi_relative_entropy(f, K1, rho1, sigma1);
  out.gap = out.full - out.reduced;
  out.norm_K = op_norm(k);
  out.norm_Delta = ModularOperator(sigma, rho).norm();
  return out;
}

double monotonicity_gap(const OperatorConvexFunction& f, const Matrix& K1, const Matrix& V,
                        const PositiveOperator& rho, const PositiveOperator& sigma,
                        const Reduction& red) {
  return analyze_monotonicity(f, K1, V, rho, sigma, red).gap;
}

namespace {

BoundReport base_report(const char* id, const OperatorConvexFunction& f, const Reduction& red,
                        const PositiveOperator& rho, const PositiveOperator& sigma,
                        const Matrix& K1, const Matrix& V) {
  BoundReport r;
  r.inequality_id = id;
  r.function_id = f.id();
  r.dims = red.space.factor_dims();
  r.inputs_digest = digest_of({&rho.matrix(), &sigma.matrix(), &K1, &V});
  return r;
}

}  // namespace

BoundReport verify_monotonicity(const OperatorConvexFunction& f, const Matrix& K1,
                                const Matrix& V, const PositiveOperator& rho,
                                const PositiveOperator& sigma, const Reduction& red) {
  BoundReport r = base_report("monotonicity", f, red, rho, sigma, K1, V);
  try {
    const MonotonicityInstance m = analyze_monotonicity(f, K1, V, rho, sigma, red);
    r.add(make_check("monotonicity", m.reduced, m.full, 0.0, kGapAbs));
    r.constants["full"] = m.full;
    r.constants["reduced"] = m.reduced;
  } catch (const DivergentEntropy& e) {
    r.mark_divergent(e.what());
  }
  return r;
}

BoundReport verify_monotonicity_bound(const OperatorConvexFunction& f, const Matrix& K1,
                                      const Matrix& V, const PositiveOperator& rho,
                                      const PositiveOperator& sigma, const Reduction& red,
                                      double beta) {
  require_beta(beta);
  BoundReport r = base_report("remainder", f, red, rho, sigma, K1, V);
  r.beta = beta;
  MonotonicityInstance m;
  try {
    m = analyze_monotonicity(f, K1, V, rho, sigma, red);
  } catch (const DivergentEntropy& e) {
    r.mark_divergent(e.what());
    return r;
  }
  const Matrix res = monotonicity_residual({beta, K1, V}, rho, sigma, red);
  const double norm_r = hs_norm(res);
  const double lhs = kPi / std::sin(beta * kPi) * norm_r;
  r.constants["gap"] = m.gap;
  r.constants["residual_hs"] = norm_r;
  r.constants["norm_K"] = m.norm_K;
  r.constants["norm_Delta"] = m.norm_Delta;
  if (!f.is_regular()) {
    r.add(make_check("gap_nonnegative", 0.0, m.gap, 0.0, kGapAbs));
    r.notes.push_back("function is not regular: remainder bound not applicable");
    return r;
  }
  const RemainderInputs in{beta, m.norm_K, m.norm_Delta, m.gap};
  const TOptimum opt =
      add_remainder_checks(r, lhs, [&](double t) { return thm42_rhs(f, in, t); });
  r.add(make_check("gap_nonnegative", 0.0, m.gap, 0.0, kGapAbs));
  {
    const BoundConstants k = bound_constants(f, beta, m.norm_K, m.norm_Delta);
    const double envelope = k.M * std::pow(clip(m.gap), k.alpha);
    r.add(make_check("power_law", norm_r, envelope, kReportRel, kReportAbs));
    // The power-law envelope is the unconstrained minimum over T, so it can
    // only sit below the minimum over [1, 1e8].
    r.add(make_check("envelope_below_optimum", envelope,
                     std::sin(beta * kPi) / kPi * opt.value, kReportRel, kReportAbs));
    const nlohmann::ordered_json kj = k.to_json();
    for (const auto& [key, v] : kj.items()) r.constants[key] = v;
    if (f.id() == "neg_log" || f.id().rfind("f_p:", 0) == 0) {
      const bool log = f.id() == "neg_log";
      const double p = log ? 0.0 : *f_p_exponent(f.id());
      const double n_explicit = explicit_N(log ? ExplicitKind::Log : ExplicitKind::Power, beta,
                                           p, m.norm_K, m.norm_Delta);
      r.constants["N_explicit"] = n_explicit;
      r.add(make_check("explicit_N", n_explicit * std::pow(norm_r, 1.0 / k.alpha), m.gap,
                       kReportRel, kReportAbs));
    }
  }
  return r;
}

BoundReport verify_petz_bound(const OperatorConvexFunction& f, const Matrix& K1, const Matrix& V,
                              const PositiveOperator& rho, const PositiveOperator& sigma,
                              const Reduction& red) {
  BoundReport r = base_report("petz", f, red, rho, sigma, K1, V);
  r.beta = 0.5;
  MonotonicityInstance m;
  try {
    m = analyze_monotonicity(f, K1, V, rho, sigma, red);
  } catch (const DivergentEntropy& e) {
    r.mark_divergent(e.what());
    return r;
  }
  const PositiveOperator sigma1(hermitian_part(red.trace_out(sigma.matrix())));
  const Matrix k = red.lift(K1, V);
  const Matrix recovered = petz_recover(rho, K1.adjoint() * sigma1.matrix() * K1, red);
  const double dist = trace_norm(recovered - k.adjoint() * sigma.matrix() * k);
  const double norm_r = hs_norm(monotonicity_residual({0.5, K1, V}, rho, sigma, red));
  r.constants["gap"] = m.gap;
  r.constants["recovery_trace_distance"] = dist;
  r.constants["residual_hs"] = norm_r;
  // The recovery map only reaches supp rho.
  const Matrix target = k.adjoint() * sigma.matrix() * k;
  const double outside =
      op_norm((Matrix::Identity(rho.dim(), rho.dim()) - rho.support_projector()) * target);
  const bool recoverable = outside <= tol::kPsd;
  if (!recoverable) {
    r.notes.push_back("K* sigma K is not supported in supp rho: recovery checks skipped");
  }
  if (recoverable && f.is_regular()) {
    const BoundConstants kc = bound_constants(f, 0.5, m.norm_K, m.norm_Delta);
    r.add(make_check("petz_power_law", dist, 2.0 * kc.M * std::pow(clip(m.gap), kc.alpha),
                     kReportRel, kReportAbs));
    r.constants["M"] = kc.M;
    r.constants["alpha"] = kc.alpha;
  }
  if (recoverable) {
    r.add(make_check("petz_via_residual", dist, 2.0 * norm_r, kReportRel, kReportAbs));
  }
  if (f.id() == "neg_log") {
    // Quartic form needs K = I.
    const int d1 = static_cast<int>(K1.rows());
    const int d2 = static_cast<int>(V.rows());
    const Matrix i1 = Matrix::Identity(d1, d1);
    const Matrix i2 = Matrix::Identity(d2, d2);
    const MonotonicityInstance mi = analyze_monotonicity(f, i1, i2, rho, sigma, red);
    const double ri = hs_norm(monotonicity_residual({0.5, i1, i2}, rho, sigma, red));
    const double lhs = std::pow(kPi / 4.0, 4) / (mi.norm_Delta * mi.norm_Delta) * std::pow(ri, 4);
    r.add(make_check("quartic_identity_K", lhs, mi.gap, kReportRel, kReportAbs));
  }
  return r;
}

DensityMatrix Ensemble::mixed_rho() const {
  Matrix m = Matrix::Zero(rhos.front().dim(), rhos.front().dim());
  for (std::size_t j = 0; j < rhos.size(); ++j) m += weights[j] * rhos[j].matrix();
  return DensityMatrix(hermitian_part(m));
}

DensityMatrix Ensemble::mixed_sigma() const {
  Matrix m = Matrix::Zero(sigmas.front().dim(), sigmas.front().dim());
  for (std::size_t j = 0; j < sigmas.size(); ++j) m += weights[j] * sigmas[j].matrix();
  return DensityMatrix(hermitian_part(m));
}

namespace {

void require_ensemble(const Ensemble& e) {
  if (e.rhos.empty() || e.rhos.size() != e.sigmas.size() || e.rhos.size() != e.weights.size()) {
    throw InvalidParameter("ensemble needs matching weights, rhos and sigmas");
  }
  double total = 0.0;
  for (double w : e.weights) {
    if (!(w > 0.0)) throw InvalidParameter("ensemble weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > tol::kTrace) throw InvalidParameter("ensemble weights must sum to 1");
}

struct JointConvexityParts {
  double jensen_gap = 0.0;
  double remainder = 0.0;          // sum_j p_j^{1/2} ||X_j||_2
  double remainder_register = 0.0;  // (sum_j p_j ||X_j||_2^2)^{1/2}
  double D = 0.0;
  double equality_residual = 0.0;
};

JointConvexityParts joint_convexity_parts(const OperatorConvexFunction& f, const Matrix& K,
                                          const Ensemble& e, double beta) {
  const DensityMatrix rho = e.mixed_rho();
  const DensityMatrix sigma = e.mixed_sigma();
  JointConvexityParts out;
  double mixture = 0.0;
  double sq = 0.0;
  const Matrix lead = sigma.power(beta) * K * rho.power(-beta);
  for (std::size_t j = 0; j < e.rhos.size(); ++j) {
    const double w = e.weights[j];
    mixture += w * quasi_relative_entropy(f, K, e.rhos[j], e.sigmas[j]);
    const Matrix x = lead * e.rhos[j].power(0.5) -
                     e.sigmas[j].power(beta) * K * e.rhos[j].power(0.5 - beta);
    const double nx = hs_norm(x);
    out.remainder += std::sqrt(w) * nx;
    sq += w * nx * nx;
    out.D += e.rhos[j].inverse_norm() / w;
    for (double b : kDefaultBetaGrid) {
      const Matrix diff =
          sigma.power(b) * K * rho.power(-b) - e.sigmas[j].power(b) * K * e.rhos[j].power(-b);
      out.equality_residual = std::max(out.equality_residual, op_norm(diff));
    }
  }
  out.remainder_register = std::sqrt(sq);
  out.jensen_gap = mixture - quasi_relative_entropy(f, K, rho, sigma);
  return out;
}

void add_joint_convexity_checks(BoundReport& r, const OperatorConvexFunction& f, const Matrix& K,
                                const JointConvexityParts& parts, double beta) {
  r.add(make_check("jensen_gap_nonnegative", 0.0, parts.jensen_gap, 0.0, kGapAbs));
  const double norm_K = op_norm(K);
  if (f.is_regular()) {
    const RemainderInputs in{beta, norm_K, parts.D, parts.jensen_gap};
    const double scale = kPi / std::sin(beta * kPi);
    add_remainder_checks(r, scale * parts.remainder,
                         [&](double t) { return thm42_rhs(f, in, t); });
    const BoundConstants k = bound_constants(f, beta, norm_K, parts.D);
    r.add(make_check("power_law", parts.remainder,
                     k.M * std::pow(clip(parts.jensen_gap), k.alpha), kReportRel, kReportAbs));
    const nlohmann::ordered_json kj = k.to_json();
    for (const auto& [key, v] : kj.items()) r.constants[key] = v;
  } else {
    r.notes.push_back("function is not regular: remainder bound not applicable");
  }
  r.constants["jensen_gap"] = parts.jensen_gap;
  r.constants["remainder"] = parts.remainder;
  r.constants["remainder_register"] = parts.remainder_register;
  r.constants["D"] = parts.D;
  r.constants["equality_residual"] = parts.equality_residual;
}

}  // namespace

BoundReport verify_joint_convexity(const OperatorConvexFunction& f, const Matrix& K,
                                   const Ensemble& e, double beta) {
  require_beta(beta);
  require_ensemble(e);
  BoundReport r;
  r.inequality_id = "joint_convexity";
  r.function_id = f.id();
  r.beta = beta;
  r.dims = {e.rhos.front().dim()};
  std::uint64_t h = digest(K);
  for (std::size_t j = 0; j < e.rhos.size(); ++j) {
    h = digest(e.sigmas[j].matrix(), digest(e.rhos[j].matrix(), h));
  }
  r.inputs_digest = hex_digest(h);
  try {
    add_joint_convexity_checks(r, f, K, joint_convexity_parts(f, K, e, beta), beta);
  } catch (const DivergentEntropy& ex) {
    r.mark_divergent(ex.what());
  }
  return r;
}

BoundReport verify_wyd_concavity(double p, const Matrix& K, const Ensemble& e, double beta) {
  require_beta(beta);
  require_ensemble(e);
  const OperatorConvexFunction f = make_f_p(p);
  BoundReport r = verify_joint_convexity(f, K, e, beta);
  r.inequality_id = "wyd_concavity";
  if (r.divergent) return r;
  // Concavity gap of Tr K* sigma^p K rho^{1-p}, divided by p(1-p).
  auto trace_term = [&](const PositiveOperator& rho, const PositiveOperator& sigma) {
    return real_trace(K.adjoint() * sigma.power(p) * K * rho.power(1.0 - p));
  };
  double mixture = 0.0;
  for (std::size_t j = 0; j < e.rhos.size(); ++j) {
    mixture += e.weights[j] * trace_term(e.rhos[j], e.sigmas[j]);
  }
  const double direct = (trace_term(e.mixed_rho(), e.mixed_sigma()) - mixture) / (p * (1.0 - p));
  const double via_entropy = r.constants["jensen_gap"].get<double>();
  r.constants["concavity_gap_direct"] = direct;
  r.add(make_check("direct_matches_entropy_gap", std::abs(direct - via_entropy), 0.0, 0.0,
                   1e-9 * std::max(1.0, std::abs(direct))));
  return r;
}

BoundReport verify_wyd_skew(double p, const Matrix& K, const PositiveOperator& rho) {
  BoundReport r;
  r.inequality_id = "wyd_skew";
  r.function_id = make_f_p(p).id();
  r.dims = {rho.dim()};
  r.inputs_digest = digest_of({&rho.matrix(), &K});
  const double skew = wyd_skew_information(p, rho, K);
  const double via_entropy = p * (1.0 - p) * quasi_relative_entropy(make_f_p(p), K, rho, rho);
  r.add(make_check("skew_nonnegative", 0.0, skew, 0.0, 1e-12));
  r.add(make_check("skew_matches_self_entropy", std::abs(skew - via_entropy), 0.0, 0.0,
                   1e-10 * std::max(1.0, std::abs(skew))));
  r.constants["skew_information"] = skew;
  return r;
}

BoundReport verify_classical_reduction(const OperatorConvexFunction& f,
                                       const PositiveOperator& rho,
                                       const PositiveOperator& sigma) {
  BoundReport r;
  r.inequality_id = "classical_reduction";
  r.function_id = f.id();
  r.dims = {rho.dim()};
  r.inputs_digest = digest_of({&rho.matrix(), &sigma.matrix()});
  try {
    const ClassicalReduction cr = classical_reduction(f, rho, sigma);
    const double quantum =
        quasi_relative_entropy(f, Matrix::Identity(rho.dim(), rho.dim()), rho, sigma);
    r.add(make_check("classical_below_quantum", cr.divergence, quantum, kReportRel, kReportAbs));
    r.add(make_check("trace_distance_preserved",
                     std::abs(cr.classical_l1 - cr.quantum_trace_distance), 0.0, 0.0, 1e-10));
    r.constants["classical"] = cr.divergence;
    r.constants["quantum"] = quantum;
  } catch (const DivergentEntropy& e) {
    r.mark_divergent(e.what());
  }
  return r;
}

}  // namespace qre
