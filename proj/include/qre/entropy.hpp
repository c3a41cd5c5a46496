// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include "qre/linalg.hpp"
#include "qre/opfunc.hpp"
#include "qre/report.hpp"
#include "qre/spectral.hpp"

namespace qre {

// S_f^K(rho || sigma) = Tr rho^{1/2} K* f(Delta_{sigma,rho})(K rho^{1/2})
//                     = sum_{j,k} lambda_j f(mu_k / lambda_j) |<phi_k|K|psi_j>|^2
// over lambda_j above the cutoff. Pairs with lambda_j = 0 < mu_k contribute
// mu_k f'(inf) |<phi_k|K|psi_j>|^2. DivergentEntropy when such a pair, or one
// with mu_k = 0 < lambda_j, has nonzero overlap and the matching limit
// (f'(inf) or f(0+)) is infinite.
double quasi_relative_entropy(const OperatorConvexFunction& f, const Matrix& K,
                              const PositiveOperator& rho, const PositiveOperator& sigma);

// Tr rho log rho - Tr rho log sigma, computed from matrix logarithms.
double umegaki(const PositiveOperator& rho, const PositiveOperator& sigma);
double von_neumann_entropy(const PositiveOperator& rho);

// -1/2 Tr [K, rho^p][K, rho^{1-p}].
double wyd_skew_information(double p, const PositiveOperator& rho, const Matrix& K);

// Tr sigma^{1/2} K* g_p(Delta_{rho,sigma})(K sigma^{1/2}) with
// g_p(x) = (x - x^p) / (p (1 - p)) and g_1(x) = x log x; p in (0, 2].
double j_p_entropy(double p, const Matrix& K, const PositiveOperator& rho,
                   const PositiveOperator& sigma);

struct ClassicalReduction {
  std::array<double, 2> p{};
  std::array<double, 2> q{};
  double divergence = 0.0;
  double quantum_trace_distance = 0.0;  // ||rho - sigma||_1
  double classical_l1 = 0.0;            // ||p - q||_1
};

// Measurement {Pi, I - Pi} with Pi the projector onto the positive part of
// rho - sigma; the induced two-point distributions keep the trace distance.
ClassicalReduction classical_reduction(const OperatorConvexFunction& f,
                                       const PositiveOperator& rho,
                                       const PositiveOperator& sigma);

// f''(1)/2 ||rho - U* sigma U||_1^2 <= S_f^U(rho || sigma).
BoundReport pinsker_check(const OperatorConvexFunction& f, const Matrix& U,
                          const PositiveOperator& rho, const PositiveOperator& sigma);

}  // namespace qre
