// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#include "qre/recovery.hpp"

#include <algorithm>

#include "qre/errors.hpp"

namespace qre {

namespace {

void require_dim(const PositiveOperator& op, int dim, const char* what) {
  if (op.dim() != dim) {
    throw ShapeMismatch(std::string(what) + " has dimension " + std::to_string(op.dim()) +
                        ", expected " + std::to_string(dim));
  }
}

void require_tripartite(const FactorizedSpace& abc) {
  if (abc.num_factors() != 3) throw InvalidParameter("expected a tripartite space A (x) B (x) C");
}

}  // namespace

Matrix petz_recover(const PositiveOperator& rho, const Matrix& gamma, const Reduction& red) {
  require_dim(rho, red.space.dim(), "rho");
  const PositiveOperator rho1(hermitian_part(red.trace_out(rho.matrix())));
  if (gamma.rows() != rho1.dim() || gamma.cols() != rho1.dim()) {
    throw ShapeMismatch("petz_recover: gamma must live on the kept subsystem");
  }
  const Matrix half = rho.power(0.5);
  const Matrix inner = rho1.power(-0.5) * gamma * rho1.power(-0.5);
  return half * red.lift(inner) * half;
}

Matrix monotonicity_residual(const ResidualSpec& spec, const PositiveOperator& rho,
                             const PositiveOperator& sigma, const Reduction& red) {
  require_dim(rho, red.space.dim(), "rho");
  require_dim(sigma, red.space.dim(), "sigma");
  const PositiveOperator rho1(hermitian_part(red.trace_out(rho.matrix())));
  const PositiveOperator sigma1(hermitian_part(red.trace_out(sigma.matrix())));
  const double b = spec.beta;
  const Matrix k = red.lift(spec.K1, spec.V);
  const Matrix reduced = red.lift(sigma1.power(b) * spec.K1 * rho1.power(-b), spec.V);
  return reduced * rho.power(0.5) - sigma.power(b) * k * rho.power(0.5 - b);
}

double equality_condition_residual(const PositiveOperator& rho, const PositiveOperator& sigma,
                                   const Matrix& K1, const Matrix& V, const Reduction& red,
                                   const std::vector<double>& betas) {
  require_dim(rho, red.space.dim(), "rho");
  require_dim(sigma, red.space.dim(), "sigma");
  const PositiveOperator rho1(hermitian_part(red.trace_out(rho.matrix())));
  const PositiveOperator sigma1(hermitian_part(red.trace_out(sigma.matrix())));
  const Matrix k = red.lift(K1, V);
  double worst = 0.0;
  for (double b : betas) {
    const Matrix diff = red.lift(sigma1.power(b) * K1 * rho1.power(-b), V) -
                        sigma.power(b) * k * rho.power(-b);
    worst = std::max(worst, op_norm(diff));
  }
  return worst;
}

Matrix ssa_residual_P(const PositiveOperator& rho_abc, const PositiveOperator& sigma_ab,
                      double beta, const FactorizedSpace& abc) {
  require_tripartite(abc);
  require_dim(rho_abc, abc.dim(), "rho_ABC");
  const FactorizedSpace ab = abc.restrict_to({0, 1});
  require_dim(sigma_ab, ab.dim(), "sigma_AB");
  const PositiveOperator sigma_b(hermitian_part(ab.partial_trace(sigma_ab.matrix(), {1})));
  const PositiveOperator rho_bc(hermitian_part(abc.partial_trace(rho_abc.matrix(), {1, 2})));
  const Matrix first = abc.embed(sigma_b.power(beta), {1}) *
                       abc.embed(rho_bc.power(-beta), {1, 2}) * rho_abc.power(0.5);
  const Matrix second = abc.embed(sigma_ab.power(beta), {0, 1}) * rho_abc.power(0.5 - beta);
  return first - second;
}

Matrix ssa_residual_Q(const PositiveOperator& rho_ab, const PositiveOperator& sigma_abc,
                      double beta, const FactorizedSpace& abc) {
  require_tripartite(abc);
  require_dim(sigma_abc, abc.dim(), "sigma_ABC");
  const FactorizedSpace ab = abc.restrict_to({0, 1});
  require_dim(rho_ab, ab.dim(), "rho_AB");
  const PositiveOperator rho_b(hermitian_part(ab.partial_trace(rho_ab.matrix(), {1})));
  const PositiveOperator sigma_bc(hermitian_part(abc.partial_trace(sigma_abc.matrix(), {1, 2})));
  const Matrix first = abc.embed(sigma_bc.power(beta), {1, 2}) * abc.embed(rho_b.power(-beta), {1}) *
                       abc.embed(rho_ab.power(0.5), {0, 1});
  const Matrix second = sigma_abc.power(beta) * abc.embed(rho_ab.power(0.5 - beta), {0, 1});
  return first - second;
}

}  // namespace qre
