// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include <json.hpp>

#include "qre/linalg.hpp"
#include "qre/opfunc.hpp"
#include "qre/recovery.hpp"
#include "qre/report.hpp"
#include "qre/spectral.hpp"

namespace qre {

// Exponents of the remainder bound
//   (pi / sin(beta pi)) ||R_beta||_2 <= A T^{-alpha1} + T^{alpha2} sqrt(C^f_{T,beta} gap),
//   A = 2 (||K|| / beta + ||Delta|| / (1 - beta)).
struct RemainderExponents {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
};
RemainderExponents remainder_exponents(double beta);

// Power-law exponent alpha(beta, c) of ||R_beta||_2 <= M gap^alpha.
double bound_alpha(double beta, double c);

struct BoundConstants {
  double beta = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha = 0.0;
  double C = 0.0;
  double c = 0.0;
  double norm_K = 0.0;
  double D = 0.0;  // bound on ||Delta||
  double M = 0.0;
  double N = 0.0;  // M^{-1/alpha}: N ||R||^{1/alpha} <= gap
  double T_star = 0.0;
  nlohmann::ordered_json to_json() const;
};

// Minimizing A T^{-a} + sqrt(C gap) T^{b}, b = alpha2 + c, over T > 0 gives
// M gap^alpha with alpha = a / (2(a + b)) and
//   M = (sin(beta pi) / pi) A^{b/s} C^{a/(2s)} ((b/a)^{a/s} + (a/b)^{b/s}),  s = a + b.
// T_star is the minimizer for gap = 1.
BoundConstants bound_constants(double beta, RegularityConstants rc, double norm_K, double D);
BoundConstants bound_constants(const OperatorConvexFunction& f, double beta, double norm_K,
                               double D);
// Minimizer of the power-law relaxation for a given gap.
double optimal_T(const BoundConstants& k, double gap);

enum class ExplicitKind { Log, Power };
// N as printed in closed form for -log (C = 1, c = 0) and for the power
// family (p in (0, 1)), both branches in beta.
double explicit_N(ExplicitKind kind, double beta, double p, double norm_K, double D);

struct RemainderInputs {
  double beta = 0.5;
  double norm_K = 1.0;
  double norm_Delta = 1.0;
  double gap = 0.0;
};

// Right-hand side of the remainder bound at a given T. For T < 1 the
// window term is absent.
double thm42_rhs(const OperatorConvexFunction& f, const RemainderInputs& in, double T);

struct TOptimum {
  double T = 0.0;
  double value = 0.0;
  bool at_boundary = false;
};
// Golden-section search on log T over [lo, hi].
TOptimum optimize_T(const std::function<double(double)>& rhs, double lo = 1.0, double hi = 1e8,
                    double rel_tol = 1e-6);

// S_f^K(rho || sigma) - S_f^{K_1}(rho_1 || sigma_1), K = K_1 (x) V.
struct MonotonicityInstance {
  double full = 0.0;
  double reduced = 0.0;
  double gap = 0.0;
  double norm_K = 0.0;
  double norm_Delta = 0.0;
};
MonotonicityInstance analyze_monotonicity(const OperatorConvexFunction& f, const Matrix& K1,
                                          const Matrix& V, const PositiveOperator& rho,
                                          const PositiveOperator& sigma, const Reduction& red);
double monotonicity_gap(const OperatorConvexFunction& f, const Matrix& K1, const Matrix& V,
                        const PositiveOperator& rho, const PositiveOperator& sigma,
                        const Reduction& red);

BoundReport verify_monotonicity(const OperatorConvexFunction& f, const Matrix& K1,
                                const Matrix& V, const PositiveOperator& rho,
                                const PositiveOperator& sigma, const Reduction& red);

// Remainder bound at the optimal T and on a log grid of 20 points in (1, 1e6),
// plus the power-law form when f is regular.
BoundReport verify_monotonicity_bound(const OperatorConvexFunction& f, const Matrix& K1,
                                      const Matrix& V, const PositiveOperator& rho,
                                      const PositiveOperator& sigma, const Reduction& red,
                                      double beta);

// ||R_rho(K_1* sigma_1 K_1) - K* sigma K||_1 <= 2 ||R_{1/2}||_2 <= 2 M gap^alpha,
// and for -log with K = I the quartic form
// (pi/4)^4 ||Delta||^{-2} ||R_{1/2}||_2^4 <= gap.
BoundReport verify_petz_bound(const OperatorConvexFunction& f, const Matrix& K1, const Matrix& V,
                              const PositiveOperator& rho, const PositiveOperator& sigma,
                              const Reduction& red);

struct Ensemble {
  std::vector<double> weights;
  std::vector<DensityMatrix> rhos;
  std::vector<DensityMatrix> sigmas;
  DensityMatrix mixed_rho() const;
  DensityMatrix mixed_sigma() const;
};

// sum_j p_j S(rho_j || sigma_j) - S(rho || sigma) >= 0 and its remainder
// bound with D = sum_j p_j^{-1} ||rho_j^{-1}|| and the remainder
// sum_j p_j^{1/2} ||sigma^beta K rho^{-beta} rho_j^{1/2} - sigma_j^beta K rho_j^{1/2-beta}||_2.
BoundReport verify_joint_convexity(const OperatorConvexFunction& f, const Matrix& K,
                                   const Ensemble& e, double beta);

// Weighted ensemble concavity of Tr K* sigma^p K rho^{1-p}, p in (0, 1),
// with the remainder from the f_p joint-convexity bound.
BoundReport verify_wyd_concavity(double p, const Matrix& K, const Ensemble& e, double beta);

// Skew information is p(1-p) S_{f_p}^K(rho || rho) >= 0.
BoundReport verify_wyd_skew(double p, const Matrix& K, const PositiveOperator& rho);

// Two-point reduction: ||p - q||_1 = ||rho - sigma||_1 and D_f(p||q) <= S_f(rho||sigma).
BoundReport verify_classical_reduction(const OperatorConvexFunction& f,
                                       const PositiveOperator& rho,
                                       const PositiveOperator& sigma);

}  // namespace qre
