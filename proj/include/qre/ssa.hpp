// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qre/bounds.hpp"
#include "qre/space.hpp"

namespace qre {

// Tripartite A (x) B (x) C throughout; partial traces over AB leave
// operators on C.
enum class SsaVariant {
  // rho_ABC, sigma_AB with f.
  P,
  // rho_AB, sigma_ABC with f.
  Q,
  // rho_ABC, sigma_AB with x f(1/x): the roles of the two states swap.
  TransposedP,
  // rho_AB, sigma_ABC with x f(1/x).
  TransposedQ,
};

const char* to_string(SsaVariant v);
SsaVariant ssa_variant_from_string(const std::string& s);

// Both sides of one operator inequality N X^{1/alpha} <= Y on H_C.
struct OperatorSsaSides {
  Matrix lhs;
  Matrix rhs;
  BoundConstants constants;
};

// P form: X = Tr_AB P P*,
//   Y = Tr_AB f(Delta_{sigma_AB (x) I, rho})(rho) - Tr_B f(Delta_{sigma_B (x) I, rho_BC})(rho_BC).
OperatorSsaSides operator_ssa_p(const OperatorConvexFunction& f, const PositiveOperator& rho_abc,
                                const PositiveOperator& sigma_ab, double beta,
                                const FactorizedSpace& abc);
// Q form: X = Tr_AB Q* Q,
//   Y = Tr_AB f(Delta_{sigma, rho_AB (x) I})(rho_AB (x) I)
//     - Tr_B f(Delta_{sigma_BC, rho_B (x) I})(rho_B (x) I).
OperatorSsaSides operator_ssa_q(const OperatorConvexFunction& f, const PositiveOperator& rho_ab,
                                const PositiveOperator& sigma_abc, double beta,
                                const FactorizedSpace& abc);

// tri is a state on ABC and bi a state on AB. The transposed variants use
// x f(1/x), with the tripartite state as the second argument of the modular
// operator. Passes when lambda_min(Y - N X^{1/alpha}) >= -1e-8 ||Y||.
BoundReport verify_operator_ssa(const OperatorConvexFunction& f, const PositiveOperator& tri,
                                const PositiveOperator& bi, double beta, SsaVariant variant,
                                const FactorizedSpace& abc);

// Scalar strong subadditivity with its remainder (K = I, -log) and the
// recovery form
//   (pi/8)^4 ||rho^{-1}||^{-2} ||R_rho(rho_B (x) rho_C) - rho_AB (x) rho_C||_1^4 <= gap.
BoundReport verify_ssa(const PositiveOperator& rho_abc, double beta, const FactorizedSpace& abc);

// Operator WYD, p in (0, 1): the transposed Q form for f_p, whose right side
// is (Tr_B rho_BC^{1-p} sigma_B^p - Tr_AB rho^{1-p} sigma_AB^p) / (p(1-p)).
BoundReport verify_operator_wyd(double p, const PositiveOperator& rho_abc,
                                const PositiveOperator& sigma_ab, double beta,
                                const FactorizedSpace& abc);

// Tr_AB sigma_AB rho^{-1} sigma_AB - Tr_B sigma_B rho_BC^{-1} sigma_B >= 0, via the
// partial-trace Schwarz inequality Tr_A X* Q^{-1} X >= X_BC* Q_BC^{-1} X_BC with
// X = sigma_AB (x) I, Q = rho_ABC.
BoundReport verify_cauchy_schwarz(const PositiveOperator& rho_abc,
                                  const PositiveOperator& sigma_ab, const FactorizedSpace& abc);

// One row of the equality study: an exact equality instance (eps = 0) or a
// perturbation of it.
struct EqualityRow {
  std::string inequality_id;
  double eps = 0.0;
  double gap = 0.0;
  double residual = 0.0;
};

// Equality instances for monotonicity (product states), joint convexity
// (orthogonal blocks) and operator SSA (rho_ABC = sigma_AB (x) tau_C), each
// followed by the mixtures (1 - eps) x + eps omega for the given eps.
std::vector<EqualityRow> equality_suite(std::uint64_t seed, const std::vector<double>& eps);

}  // namespace qre
