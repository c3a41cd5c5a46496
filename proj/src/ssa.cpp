// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#include "qre/ssa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qre/entropy.hpp"
#include "qre/errors.hpp"
#include "qre/matrix_io.hpp"
#include "qre/modular.hpp"
#include "qre/random.hpp"

namespace qre {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPsdRel = 1e-8;
// Rounding floor for operators that vanish identically (equality cases).
constexpr double kPsdAbs = 1e-12;
constexpr double kRhsPsd = 1e-9;
constexpr double kGapAbs = 1e-9;

const Subsystem kAB = {0, 1};
const Subsystem kBC = {1, 2};
const Subsystem kB = {1};
const Subsystem kC = {2};

void require_tripartite(const FactorizedSpace& abc) {
  if (abc.num_factors() != 3) throw InvalidParameter("expected a tripartite space A (x) B (x) C");
}

PositiveOperator reduce(const FactorizedSpace& space, const PositiveOperator& op,
                        const Subsystem& keep) {
  return PositiveOperator(hermitian_part(space.partial_trace(op.matrix(), keep)));
}

double min_eigenvalue(const Matrix& m) {
  return SpectralDecomposition(HermitianMatrix(hermitian_part(m))).min_eigenvalue();
}

// N X^{1/alpha} with eigenvalues at or below the cutoff set to zero.
Matrix powered_lhs(const Matrix& x, const BoundConstants& k) {
  const SpectralDecomposition s{HermitianMatrix(hermitian_part(x))};
  const double cut = s.default_cutoff();
  const double e = 1.0 / k.alpha;
  return k.N * s.apply([cut, e](double v) { return v > cut ? std::pow(v, e) : 0.0; });
}

// f(Delta_{sigma, rho})(rho) as the limit of rho + eps (I - P_rho): the kernel of
// rho adds f'(inf) sigma (I - P_rho).
Matrix perspective(const OperatorConvexFunction& f, const PositiveOperator& sigma,
                   const PositiveOperator& rho) {
  Matrix out = ModularOperator(sigma, rho).apply_function(f, rho.matrix());
  if (rho.full_rank()) return out;
  const Matrix outside =
      sigma.matrix() * (Matrix::Identity(rho.dim(), rho.dim()) - rho.support_projector());
  if (op_norm(outside) <= tol::kPsd) return out;
  const auto slope = f.slope_at_infinity();
  if (!slope) throw DivergentEntropy(f.id() + ": sigma has weight outside the support of rho", -1, -1);
  return out + *slope * outside;
}

// Tr_AB f(Delta_{sigma, rho})(rho) - Tr_B f(Delta_{sigma_1, rho_1})(rho_1), where
// the first pair lives on ABC and the second on BC.
Matrix modular_difference(const OperatorConvexFunction& f, const FactorizedSpace& abc,
                          const PositiveOperator& sigma, const PositiveOperator& rho,
                          const PositiveOperator& sigma1, const PositiveOperator& rho1) {
  const FactorizedSpace bc = abc.restrict_to(kBC);
  const Matrix full = perspective(f, sigma, rho);
  const Matrix reduced = perspective(f, sigma1, rho1);
  return hermitian_part(abc.partial_trace(full, kC) - bc.partial_trace(reduced, {1}));
}

// Scalar counterpart of modular_difference, used as a trace check.
double entropy_difference(const OperatorConvexFunction& f, const PositiveOperator& sigma,
                          const PositiveOperator& rho, const PositiveOperator& sigma1,
                          const PositiveOperator& rho1) {
  const Matrix i = Matrix::Identity(rho.dim(), rho.dim());
  const Matrix i1 = Matrix::Identity(rho1.dim(), rho1.dim());
  return quasi_relative_entropy(f, i, rho, sigma) - quasi_relative_entropy(f, i1, rho1, sigma1);
}

struct Core {
  Matrix x;    // Tr_AB of the residual square
  Matrix rhs;  // Y
  double D = 0.0;
  double trace_oracle = 0.0;
  // D bounds ||Delta|| only when the second state is invertible.
  bool invertible = true;
};

Core p_core(const OperatorConvexFunction& f, const PositiveOperator& rho_abc,
            const PositiveOperator& sigma_ab, double beta, const FactorizedSpace& abc) {
  require_tripartite(abc);
  const FactorizedSpace ab = abc.restrict_to(kAB);
  const FactorizedSpace bc = abc.restrict_to(kBC);
  const PositiveOperator sigma(abc.embed(sigma_ab.matrix(), kAB));
  const PositiveOperator sigma_b = reduce(ab, sigma_ab, kB);
  const PositiveOperator sigma1(bc.embed(sigma_b.matrix(), {0}));
  const PositiveOperator rho_bc = reduce(abc, rho_abc, kBC);
  Core c;
  const Matrix p = ssa_residual_P(rho_abc, sigma_ab, beta, abc);
  c.x = hermitian_part(abc.partial_trace(p * p.adjoint(), kC));
  c.rhs = modular_difference(f, abc, sigma, rho_abc, sigma1, rho_bc);
  c.D = sigma_ab.norm() * rho_abc.inverse_norm();
  c.invertible = rho_abc.full_rank();
  c.trace_oracle = entropy_difference(f, sigma, rho_abc, sigma1, rho_bc);
  return c;
}

Core q_core(const OperatorConvexFunction& f, const PositiveOperator& rho_ab,
            const PositiveOperator& sigma_abc, double beta, const FactorizedSpace& abc) {
  require_tripartite(abc);
  const FactorizedSpace ab = abc.restrict_to(kAB);
  const FactorizedSpace bc = abc.restrict_to(kBC);
  const PositiveOperator rho(abc.embed(rho_ab.matrix(), kAB));
  const PositiveOperator rho_b = reduce(ab, rho_ab, kB);
  const PositiveOperator rho1(bc.embed(rho_b.matrix(), {0}));
  const PositiveOperator sigma_bc = reduce(abc, sigma_abc, kBC);
  Core c;
  const Matrix q = ssa_residual_Q(rho_ab, sigma_abc, beta, abc);
  c.x = hermitian_part(abc.partial_trace(q.adjoint() * q, kC));
  c.rhs = modular_difference(f, abc, sigma_abc, rho, sigma_bc, rho1);
  c.D = sigma_abc.norm() * rho_ab.inverse_norm();
  c.invertible = rho_ab.full_rank();
  c.trace_oracle = entropy_difference(f, sigma_abc, rho, sigma_bc, rho1);
  return c;
}

OperatorSsaSides finish(const OperatorConvexFunction& f, const Core& c, double beta) {
  OperatorSsaSides s;
  s.rhs = c.rhs;
  s.constants = bound_constants(f, beta, 1.0, c.D);
  s.lhs = powered_lhs(c.x, s.constants);
  return s;
}

std::string digest_of(std::initializer_list<const Matrix*> ms) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const Matrix* m : ms) h = digest(*m, h);
  return hex_digest(h);
}

// Operator inequality checks shared by the operator SSA family.
void add_operator_checks(BoundReport& r, const OperatorConvexFunction& f, const Core& c,
                         double beta) {
  const double norm_y = op_norm(c.rhs);
  const double min_y = min_eigenvalue(c.rhs);
  const double trace_y = real_trace(c.rhs);
  if (!c.invertible) {
    r.notes.push_back("rho is singular, so ||Delta|| is unbounded: only the right side is checked");
  } else if (f.is_regular()) {
    const OperatorSsaSides s = finish(f, c, beta);
    Check op;
    op.name = "operator_inequality";
    op.lhs = 0.0;
    op.rhs = min_eigenvalue(s.rhs - s.lhs);
    op.tolerance = kPsdRel * norm_y + kPsdAbs;
    r.add(op);
    const nlohmann::ordered_json kj = s.constants.to_json();
    for (const auto& [key, v] : kj.items()) r.constants[key] = v;
    r.constants["lhs_op_norm"] = op_norm(s.lhs);
  } else {
    r.notes.push_back("function is not regular: only the right side is checked");
  }
  Check psd;
  psd.name = "rhs_psd";
  psd.lhs = 0.0;
  psd.rhs = min_y;
  psd.tolerance = kRhsPsd;
  r.add(psd);
  r.add(make_check("rhs_trace_matches_entropies", std::abs(trace_y - c.trace_oracle), 0.0, 0.0,
                   1e-8 * std::max(1.0, std::abs(c.trace_oracle))));
  r.constants["rhs_min_eigenvalue"] = min_y;
  r.constants["rhs_op_norm"] = norm_y;
  r.constants["rhs_trace"] = trace_y;
  r.constants["residual_trace"] = real_trace(c.x);
  r.constants["D"] = c.D;
}

Core variant_core(const OperatorConvexFunction& f, const PositiveOperator& tri,
                  const PositiveOperator& bi, double beta, SsaVariant v,
                  const FactorizedSpace& abc) {
  switch (v) {
    case SsaVariant::P:
    case SsaVariant::TransposedP:
      return p_core(f, tri, bi, beta, abc);
    case SsaVariant::Q:
    case SsaVariant::TransposedQ:
      return q_core(f, bi, tri, beta, abc);
  }
  throw InvalidParameter("unknown operator SSA variant");
}

bool transposed(SsaVariant v) {
  return v == SsaVariant::TransposedP || v == SsaVariant::TransposedQ;
}

}  // namespace

const char* to_string(SsaVariant v) {
  switch (v) {
    case SsaVariant::P:
      return "p";
    case SsaVariant::Q:
      return "q";
    case SsaVariant::TransposedP:
      return "transposed_p";
    case SsaVariant::TransposedQ:
      return "transposed_q";
  }
  return "?";
}

SsaVariant ssa_variant_from_string(const std::string& s) {
  for (SsaVariant v : {SsaVariant::P, SsaVariant::Q, SsaVariant::TransposedP,
                       SsaVariant::TransposedQ}) {
    if (s == to_string(v)) return v;
  }
  throw InvalidParameter("unknown operator SSA variant '" + s + "'");
}

OperatorSsaSides operator_ssa_p(const OperatorConvexFunction& f, const PositiveOperator& rho_abc,
                                const PositiveOperator& sigma_ab, double beta,
                                const FactorizedSpace& abc) {
  return finish(f, p_core(f, rho_abc, sigma_ab, beta, abc), beta);
}

OperatorSsaSides operator_ssa_q(const OperatorConvexFunction& f, const PositiveOperator& rho_ab,
                                const PositiveOperator& sigma_abc, double beta,
                                const FactorizedSpace& abc) {
  return finish(f, q_core(f, rho_ab, sigma_abc, beta, abc), beta);
}

BoundReport verify_operator_ssa(const OperatorConvexFunction& f, const PositiveOperator& tri,
                                const PositiveOperator& bi, double beta, SsaVariant variant,
                                const FactorizedSpace& abc) {
  BoundReport r;
  r.inequality_id = std::string("operator_ssa:") + to_string(variant);
  r.function_id = f.id();
  r.beta = beta;
  r.dims = abc.factor_dims();
  r.inputs_digest = digest_of({&tri.matrix(), &bi.matrix()});
  const OperatorConvexFunction g = transposed(variant) ? make_transpose(f) : f;
  try {
    add_operator_checks(r, g, variant_core(g, tri, bi, beta, variant, abc), beta);
  } catch (const DivergentEntropy& e) {
    r.mark_divergent(e.what());
  } catch (const SingularArgument& e) {
    r.mark_divergent(e.what());
  }
  return r;
}

BoundReport verify_ssa(const PositiveOperator& rho_abc, double beta, const FactorizedSpace& abc) {
  require_tripartite(abc);
  const FactorizedSpace ab = abc.restrict_to(kAB);
  const FactorizedSpace bc = abc.restrict_to(kBC);
  const PositiveOperator rho_ab = reduce(abc, rho_abc, kAB);
  const PositiveOperator rho_bc = reduce(abc, rho_abc, kBC);
  const PositiveOperator rho_b = reduce(abc, rho_abc, kB);
  const PositiveOperator rho_c = reduce(abc, rho_abc, kC);
  const double gap = von_neumann_entropy(rho_ab) + von_neumann_entropy(rho_bc) -
                     von_neumann_entropy(rho_abc) - von_neumann_entropy(rho_b);

  BoundReport r;
  r.inequality_id = "ssa";
  r.function_id = "neg_log";
  r.beta = beta;
  r.dims = abc.factor_dims();
  r.inputs_digest = digest_of({&rho_abc.matrix()});
  r.add(make_check("ssa", 0.0, gap, 0.0, kGapAbs));
  r.constants["ssa_gap"] = gap;

  // The gap equals S(rho || rho_AB (x) rho_C) - S(rho_BC || rho_B (x) rho_C),
  // monotonicity under Tr_A with K = I.
  const PositiveOperator sigma(abc.embed(rho_ab.matrix(), kAB, rho_c.matrix()));
  const Reduction red{abc, kBC};
  const int dbc = bc.dim();
  const int da = abc.subsystem_dim({0});
  const Matrix i_bc = Matrix::Identity(dbc, dbc);
  const Matrix i_a = Matrix::Identity(da, da);
  try {
    const BoundReport inner =
        verify_monotonicity_bound(make_neg_log(), i_bc, i_a, rho_abc, sigma, red, beta);
    for (const Check& c : inner.checks) r.add(c);
    for (const auto& [key, v] : inner.constants.items()) {
      if (key != "gap") r.constants[key] = v;
    }
    const Matrix sigma1 = bc.embed(rho_b.matrix(), {0}, rho_c.matrix());
    const double dist = trace_norm(petz_recover(rho_abc, sigma1, red) - sigma.matrix());
    const double norm_inv = rho_abc.inverse_norm();
    const double lhs = std::pow(kPi / 8.0, 4) / (norm_inv * norm_inv) * std::pow(dist, 4);
    r.add(make_check("petz_form", lhs, gap, 1e-8, 1e-12));
    r.constants["recovery_trace_distance"] = dist;
  } catch (const DivergentEntropy& e) {
    r.mark_divergent(e.what());
  }
  return r;
}

BoundReport verify_operator_wyd(double p, const PositiveOperator& rho_abc,
                                const PositiveOperator& sigma_ab, double beta,
                                const FactorizedSpace& abc) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("operator WYD needs p in (0, 1)");
  require_tripartite(abc);
  const OperatorConvexFunction f = make_f_p(p);
  BoundReport r = verify_operator_ssa(f, rho_abc, sigma_ab, beta, SsaVariant::TransposedQ, abc);
  r.inequality_id = "operator_wyd";
  if (r.divergent) return r;

  const FactorizedSpace ab = abc.restrict_to(kAB);
  const FactorizedSpace bc = abc.restrict_to(kBC);
  const PositiveOperator rho_bc = reduce(abc, rho_abc, kBC);
  const PositiveOperator sigma_b = reduce(ab, sigma_ab, kB);
  const Matrix first =
      bc.partial_trace(rho_bc.power(1.0 - p) * bc.embed(sigma_b.power(p), {0}), {1});
  const Matrix second =
      abc.partial_trace(rho_abc.power(1.0 - p) * abc.embed(sigma_ab.power(p), kAB), kC);
  const Matrix direct = hermitian_part(first - second) / (p * (1.0 - p));
  const Matrix via_modular =
      q_core(make_transpose(f), sigma_ab, rho_abc, beta, abc).rhs;
  const double diff = op_norm(direct - via_modular);
  r.add(make_check("direct_matches_modular", diff, 0.0, 0.0,
                   1e-9 * std::max(1.0, op_norm(direct))));
  r.constants["direct_min_eigenvalue"] = min_eigenvalue(direct);
  return r;
}

BoundReport verify_cauchy_schwarz(const PositiveOperator& rho_abc,
                                  const PositiveOperator& sigma_ab, const FactorizedSpace& abc) {
  require_tripartite(abc);
  if (!rho_abc.full_rank()) throw InvalidRank("Cauchy-Schwarz form needs a full-rank rho_ABC");
  const FactorizedSpace ab = abc.restrict_to(kAB);
  const FactorizedSpace bc = abc.restrict_to(kBC);
  const PositiveOperator rho_bc = reduce(abc, rho_abc, kBC);
  const PositiveOperator sigma_b = reduce(ab, sigma_ab, kB);
  const Matrix x = abc.embed(sigma_ab.matrix(), kAB);
  const Matrix x_bc = bc.embed(sigma_b.matrix(), {0});
  const Matrix full = x * rho_abc.power(-1.0) * x;
  const Matrix reduced = x_bc * rho_bc.power(-1.0) * x_bc;

  const Matrix full_c = abc.partial_trace(full, kC);
  const Matrix full_bc = abc.partial_trace(full, kBC);
  const Matrix y = hermitian_part(full_c - bc.partial_trace(reduced, {1}));
  const Matrix lr = hermitian_part(full_bc - reduced);
  // Y and the LR operator are differences of terms carrying rho^{-1}; rounding
  // scales with those terms, not with the (possibly vanishing) difference.
  const double scale_y = std::max({1.0, op_norm(full_c), op_norm(y)});
  const double scale_lr = std::max({1.0, op_norm(full_bc), op_norm(reduced)});
  const Matrix traced = bc.partial_trace(lr, {1});

  BoundReport r;
  r.inequality_id = "cauchy_schwarz";
  r.function_id = "f_p:2";
  r.dims = abc.factor_dims();
  r.inputs_digest = digest_of({&rho_abc.matrix(), &sigma_ab.matrix()});
  Check psd;
  psd.name = "rhs_psd";
  psd.lhs = 0.0;
  psd.rhs = min_eigenvalue(y);
  psd.tolerance = kRhsPsd * scale_y;
  r.add(psd);
  Check lieb;
  lieb.name = "partial_trace_schwarz";
  lieb.lhs = 0.0;
  lieb.rhs = min_eigenvalue(lr);
  lieb.tolerance = kRhsPsd * scale_lr;
  r.add(lieb);
  r.add(make_check("schwarz_traces_to_rhs", op_norm(traced - y), 0.0, 0.0,
                   1e-9 * scale_y));

  const PositiveOperator reference(x);
  const Matrix recovered = petz_recover(reference, rho_bc.matrix(), Reduction{abc, kBC});
  r.constants["rhs_trace"] = real_trace(y);
  r.constants["rhs_min_eigenvalue"] = psd.rhs;
  r.constants["petz_residual"] = trace_norm(recovered - rho_abc.matrix());
  return r;
}

std::vector<EqualityRow> equality_suite(std::uint64_t seed, const std::vector<double>& eps) {
  Rng rng(seed);
  std::vector<EqualityRow> rows;
  auto mix = [](const PositiveOperator& x, const PositiveOperator& w, double e) {
    return DensityMatrix(hermitian_part((1.0 - e) * x.matrix() + e * w.matrix()));
  };
  const OperatorConvexFunction f = make_neg_log();
  // Factors of the exact instances keep their spectrum in [1/(2d), 1]; near-singular
  // factors make the residual saturate at the first perturbation.
  auto conditioned = [&rng](int d) {
    const Matrix id = Matrix::Identity(d, d) / static_cast<double>(d);
    return DensityMatrix(0.5 * random_density(d, d, rng).matrix() + 0.5 * id);
  };

  // Monotonicity under Tr_B with K = I: rho_1 (x) tau, sigma_1 (x) tau.
  {
    const FactorizedSpace space({2, 2});
    const Reduction red{space, {0}};
    const DensityMatrix rho1 = conditioned(2);
    const DensityMatrix sigma1 = conditioned(2);
    const DensityMatrix tau = conditioned(2);
    const DensityMatrix rho(tensor(rho1.matrix(), tau.matrix()));
    const DensityMatrix sigma(tensor(sigma1.matrix(), tau.matrix()));
    const DensityMatrix w_rho = random_density(4, 4, rng);
    const DensityMatrix w_sigma = random_density(4, 4, rng);
    const Matrix i2 = Matrix::Identity(2, 2);
    auto row = [&](double e) {
      const DensityMatrix r = mix(rho, w_rho, e);
      const DensityMatrix s = mix(sigma, w_sigma, e);
      double residual = 0.0;
      for (double b : kDefaultBetaGrid) {
        residual = std::max(residual, hs_norm(monotonicity_residual({b, i2, i2}, r, s, red)));
      }
      return EqualityRow{"monotonicity", e, monotonicity_gap(f, i2, i2, r, s, red), residual};
    };
    rows.push_back(row(0.0));
    for (double e : eps) rows.push_back(row(e));
  }

  // Joint convexity: two components on orthogonal 2-dimensional blocks of C^4.
  {
    Ensemble base;
    const double w0 = 0.2 + 0.6 * rng.uniform();
    base.weights = {w0, 1.0 - w0};
    for (int j = 0; j < 2; ++j) {
      const DensityMatrix r2 = conditioned(2);
      const DensityMatrix s2 = conditioned(2);
      Matrix r = Matrix::Zero(4, 4);
      Matrix s = Matrix::Zero(4, 4);
      r.block(2 * j, 2 * j, 2, 2) = r2.matrix();
      s.block(2 * j, 2 * j, 2, 2) = s2.matrix();
      base.rhos.emplace_back(r);
      base.sigmas.emplace_back(s);
    }
    std::vector<DensityMatrix> w_rho;
    std::vector<DensityMatrix> w_sigma;
    for (int j = 0; j < 2; ++j) {
      w_rho.push_back(random_density(4, 4, rng));
      w_sigma.push_back(random_density(4, 4, rng));
    }
    const Matrix k = Matrix::Identity(4, 4);
    auto row = [&](double e) {
      Ensemble en;
      en.weights = base.weights;
      for (int j = 0; j < 2; ++j) {
        en.rhos.push_back(e == 0.0 ? base.rhos[j] : mix(base.rhos[j], w_rho[j], e));
        en.sigmas.push_back(e == 0.0 ? base.sigmas[j] : mix(base.sigmas[j], w_sigma[j], e));
      }
      const BoundReport r = verify_joint_convexity(f, k, en, 0.5);
      return EqualityRow{"joint_convexity", e, r.constants["jensen_gap"].get<double>(),
                         r.constants["remainder"].get<double>()};
    };
    rows.push_back(row(0.0));
    for (double e : eps) rows.push_back(row(e));
  }

  // Operator SSA: rho_ABC = sigma_AB (x) tau_C, so Tr_AB P P* and the right side vanish.
  {
    const FactorizedSpace abc({2, 2, 2});
    const DensityMatrix sigma_ab = conditioned(4);
    const DensityMatrix tau = conditioned(2);
    const DensityMatrix rho(tensor(sigma_ab.matrix(), tau.matrix()));
    const DensityMatrix w = random_density(8, 8, rng);
    auto row = [&](double e) {
      const DensityMatrix r = mix(rho, w, e);
      const Core c = p_core(f, r, sigma_ab, 0.5, abc);
      return EqualityRow{"operator_ssa", e, real_trace(c.rhs), std::sqrt(std::max(0.0, real_trace(c.x)))};
    };
    rows.push_back(row(0.0));
    for (double e : eps) rows.push_back(row(e));
  }
  return rows;
}

}  // namespace qre
