// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#include "qre/entropy.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qre/errors.hpp"
#include "qre/matrix_io.hpp"
#include "qre/modular.hpp"

namespace qre {

double quasi_relative_entropy(const OperatorConvexFunction& f, const Matrix& K,
                              const PositiveOperator& rho, const PositiveOperator& sigma) {
  if (rho.dim() != sigma.dim() || K.rows() != rho.dim() || K.cols() != rho.dim()) {
    throw ShapeMismatch("quasi-entropy: rho, sigma and K must share one dimension");
  }
  const RealVector& lambda = rho.spectrum().eigenvalues();
  const RealVector& mu = sigma.spectrum().eigenvalues();
  const Matrix overlap =
      sigma.spectrum().eigenvectors().adjoint() * K * rho.spectrum().eigenvectors();
  const auto f0 = f.value_at_zero();
  const auto slope = f.slope_at_infinity();
  double total = 0.0;
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    if (lambda(j) <= rho.cutoff()) {
      // lambda f(mu / lambda) -> mu f'(inf) as lambda -> 0.
      for (Eigen::Index k = 0; k < mu.size(); ++k) {
        const double w = std::norm(overlap(k, j));
        if (mu(k) <= sigma.cutoff() || w <= tol::kOverlap) continue;
        if (!slope) {
          throw DivergentEntropy(f.id() + ": sigma has weight outside the support of rho",
                                 static_cast<int>(k), static_cast<int>(j));
        }
        total += mu(k) * *slope * w;
      }
      continue;
    }
    for (Eigen::Index k = 0; k < mu.size(); ++k) {
      const double w = std::norm(overlap(k, j));
      if (mu(k) > sigma.cutoff()) {
        total += lambda(j) * f(mu(k) / lambda(j)) * w;
      } else if (f0) {
        total += lambda(j) * *f0 * w;
      } else if (w > tol::kOverlap) {
        throw DivergentEntropy(f.id() + ": rho has weight outside the support of sigma",
                               static_cast<int>(k), static_cast<int>(j));
      }
    }
  }
  return total;
}

double von_neumann_entropy(const PositiveOperator& rho) {
  double s = 0.0;
  const RealVector& lambda = rho.spectrum().eigenvalues();
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    if (lambda(j) > rho.cutoff()) s -= lambda(j) * std::log(lambda(j));
  }
  return s;
}

double umegaki(const PositiveOperator& rho, const PositiveOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw ShapeMismatch("umegaki: dimension mismatch");
  const Matrix overlap =
      sigma.spectrum().eigenvectors().adjoint() * rho.spectrum().eigenvectors();
  for (Eigen::Index j = 0; j < rho.dim(); ++j) {
    if (rho.spectrum().eigenvalues()(j) <= rho.cutoff()) continue;
    for (Eigen::Index k = 0; k < sigma.dim(); ++k) {
      if (sigma.spectrum().eigenvalues()(k) <= sigma.cutoff() &&
          std::norm(overlap(k, j)) > tol::kOverlap) {
        throw DivergentEntropy("supp rho is not contained in supp sigma", static_cast<int>(k),
                               static_cast<int>(j));
      }
    }
  }
  return real_trace(rho.matrix() * rho.log()) - real_trace(rho.matrix() * sigma.log());
}

double wyd_skew_information(double p, const PositiveOperator& rho, const Matrix& K) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("skew information needs p in (0, 1)");
  const Matrix a = commutator(K, rho.power(p));
  const Matrix b = commutator(K, rho.power(1.0 - p));
  return -0.5 * (a * b).trace().real();
}

double j_p_entropy(double p, const Matrix& K, const PositiveOperator& rho,
                   const PositiveOperator& sigma) {
  if (!(p > 0.0 && p <= 2.0)) throw InvalidParameter("J_p needs p in (0, 2]");
  ScalarFunction g;
  if (p == 1.0) {
    g.eval = [](double x) { return x * std::log(x); };
  } else {
    const double norm = p * (1.0 - p);
    g.eval = [p, norm](double x) { return (x - std::pow(x, p)) / norm; };
  }
  g.at_zero = 0.0;
  const ModularOperator delta(rho, sigma);
  const Matrix half = sigma.power(0.5);
  return (half * K.adjoint() * delta.apply_function(g, K * half)).trace().real();
}

ClassicalReduction classical_reduction(const OperatorConvexFunction& f,
                                       const PositiveOperator& rho,
                                       const PositiveOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw ShapeMismatch("classical_reduction: dimension mismatch");
  const Matrix diff = rho.matrix() - sigma.matrix();
  const JordanHahn jh = jordan_hahn(HermitianMatrix(hermitian_part(diff)));
  ClassicalReduction out;
  out.p[0] = real_trace(jh.projector * rho.matrix());
  out.q[0] = real_trace(jh.projector * sigma.matrix());
  out.p[1] = rho.trace() - out.p[0];
  out.q[1] = sigma.trace() - out.q[0];
  out.quantum_trace_distance = trace_norm(diff);
  out.classical_l1 = std::abs(out.p[0] - out.q[0]) + std::abs(out.p[1] - out.q[1]);
  constexpr double kZero = 1e-14;
  for (int i = 0; i < 2; ++i) {
    const double p = out.p[i];
    const double q = out.q[i];
    if (p > kZero && q > kZero) {
      out.divergence += p * f(q / p);
    } else if (p > kZero) {
      if (!f.value_at_zero()) throw DivergentEntropy(f.id() + ": q vanishes where p does not", i, i);
      out.divergence += p * *f.value_at_zero();
    } else if (q > kZero) {
      // p f(q/p) -> q lim f(x)/x as p -> 0.
      if (!f.slope_at_infinity()) throw DivergentEntropy(f.id() + ": p vanishes where q does not", i, i);
      out.divergence += q * *f.slope_at_infinity();
    }
  }
  return out;
}

BoundReport pinsker_check(const OperatorConvexFunction& f, const Matrix& U,
                          const PositiveOperator& rho, const PositiveOperator& sigma) {
  BoundReport r;
  r.inequality_id = "pinsker";
  r.function_id = f.id();
  r.dims = {rho.dim()};
  r.inputs_digest = hex_digest(digest(sigma.matrix(), digest(rho.matrix(), digest(U))));
  const Matrix rotated = U.adjoint() * sigma.matrix() * U;
  const double dist = trace_norm(rho.matrix() - rotated);
  const double lhs = 0.5 * f.second_derivative_at_one() * dist * dist;
  r.constants["f_second_derivative_at_one"] = f.second_derivative_at_one();
  r.constants["trace_distance"] = dist;
  double rhs = std::numeric_limits<double>::infinity();
  try {
    rhs = quasi_relative_entropy(f, U, rho, sigma);
  } catch (const DivergentEntropy& e) {
    r.mark_divergent(e.what());
    r.lhs = lhs;
    r.rhs = rhs;
    r.gap = rhs;
    return r;
  }
  r.add(make_check("pinsker", lhs, rhs, 1e-9, 1e-12));
  return r;
}

}  // namespace qre
