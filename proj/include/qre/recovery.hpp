// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "qre/linalg.hpp"
#include "qre/space.hpp"
#include "qre/spectral.hpp"

namespace qre {

inline const std::vector<double> kDefaultBetaGrid = {0.1, 0.25, 0.5, 0.75, 0.9};

// Reduction of H = H_1 (x) H_2 where H_1 is `kept` (possibly several
// factors) and H_2 everything else.
struct Reduction {
  FactorizedSpace space;
  Subsystem kept;

  Matrix trace_out(const Matrix& m) const { return space.partial_trace(m, kept); }
  // K_1 on the kept factors, V on the rest.
  Matrix lift(const Matrix& k1, const Matrix& v) const { return space.embed(k1, kept, v); }
  Matrix lift(const Matrix& k1) const { return space.embed(k1, kept); }
};

// Petz map R_rho(gamma) = rho^{1/2} (rho_1^{-1/2} gamma rho_1^{-1/2} (x) I) rho^{1/2}
// with generalized inverses. rho may be unnormalized.
Matrix petz_recover(const PositiveOperator& rho, const Matrix& gamma, const Reduction& red);

struct ResidualSpec {
  double beta = 0.5;
  Matrix K1;  // on the kept factors
  Matrix V;   // on the traced factors
};

// R_beta = (sigma_1^beta K_1 rho_1^{-beta} (x) V) rho^{1/2} - sigma^beta K rho^{1/2 - beta},
// K = K_1 (x) V.
Matrix monotonicity_residual(const ResidualSpec& spec, const PositiveOperator& rho,
                             const PositiveOperator& sigma, const Reduction& red);

// max over betas of ||sigma_1^beta K_1 rho_1^{-beta} (x) V - sigma^beta K rho^{-beta}||_op.
double equality_condition_residual(const PositiveOperator& rho, const PositiveOperator& sigma,
                                   const Matrix& K1, const Matrix& V, const Reduction& red,
                                   const std::vector<double>& betas = kDefaultBetaGrid);

// Tripartite H_A (x) H_B (x) H_C, factors 0, 1, 2.
// P = sigma_B^beta rho_BC^{-beta} rho^{1/2} - sigma_AB^beta rho^{1/2 - beta},
// rho on ABC, sigma on AB; sigma_B = Tr_A sigma_AB.
Matrix ssa_residual_P(const PositiveOperator& rho_abc, const PositiveOperator& sigma_ab,
                      double beta, const FactorizedSpace& abc);
// Q = sigma_BC^beta rho_B^{-beta} rho_AB^{1/2} - sigma^beta rho_AB^{1/2 - beta},
// rho on AB, sigma on ABC; operators on AB act as (.) (x) I_C.
Matrix ssa_residual_Q(const PositiveOperator& rho_ab, const PositiveOperator& sigma_abc,
                      double beta, const FactorizedSpace& abc);

}  // namespace qre
