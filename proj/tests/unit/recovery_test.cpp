// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "qre/errors.hpp"
#include "qre/random.hpp"
#include "qre/recovery.hpp"

using namespace qre;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix inverse_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  const RealVector d = es.eigenvalues().array().rsqrt().matrix();
  return es.eigenvectors() * d.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix sqrt_of(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  const RealVector d = es.eigenvalues().array().sqrt().matrix();
  return es.eigenvectors() * d.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

TEST(Petz, RecoversTheReferenceMarginal) {
  const FactorizedSpace space({2, 3});
  const Reduction red{space, {0}};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const DensityMatrix rho = random_density(6, 6, seed);
    const Matrix rho1 = red.trace_out(rho.matrix());
    EXPECT_LT(max_abs(petz_recover(rho, rho1, red) - rho.matrix()), 1e-10);
  }
}

TEST(Petz, MatchesDirectFormula) {
  const FactorizedSpace space({2, 2});
  const Reduction red{space, {1}};
  Rng rng(3);
  const DensityMatrix rho = random_density(4, 4, rng);
  const DensityMatrix gamma = random_density(2, 2, rng);
  const Matrix rho1 = red.trace_out(rho.matrix());
  const Matrix inner = inverse_sqrt(rho1) * gamma.matrix() * inverse_sqrt(rho1);
  const Matrix expected =
      sqrt_of(rho.matrix()) * space.embed(inner, {1}) * sqrt_of(rho.matrix());
  EXPECT_LT(max_abs(petz_recover(rho, gamma.matrix(), red) - expected), 1e-10);
}

TEST(Petz, IsTracePreservingOnSupport) {
  const FactorizedSpace space({2, 2});
  const Reduction red{space, {0}};
  Rng rng(4);
  const DensityMatrix rho = random_density(4, 4, rng);
  const DensityMatrix gamma = random_density(2, 2, rng);
  EXPECT_NEAR(real_trace(petz_recover(rho, gamma.matrix(), red)), 1.0, 1e-10);
}

TEST(Petz, RejectsWrongShape) {
  const FactorizedSpace space({2, 2});
  const DensityMatrix rho = random_density(4, 4, 1);
  EXPECT_THROW(petz_recover(rho, Matrix::Identity(4, 4), {space, {0}}), ShapeMismatch);
}

TEST(Residual, VanishesOnProductStates) {
  const FactorizedSpace space({2, 2});
  const Reduction red{space, {0}};
  Rng rng(5);
  const DensityMatrix rho1 = random_density(2, 2, rng);
  const DensityMatrix sigma1 = random_density(2, 2, rng);
  const DensityMatrix tau = random_density(2, 2, rng);
  const DensityMatrix rho(tensor(rho1.matrix(), tau.matrix()));
  const DensityMatrix sigma(tensor(sigma1.matrix(), tau.matrix()));
  const Matrix k1 = random_contraction(2, rng);
  const Matrix v = random_unitary(2, rng);
  // V must commute with tau for the product to be an equality instance.
  const Matrix i2 = Matrix::Identity(2, 2);
  for (double b : kDefaultBetaGrid) {
    EXPECT_LT(max_abs(monotonicity_residual({b, k1, i2}, rho, sigma, red)), 1e-12);
  }
  EXPECT_LT(equality_condition_residual(rho, sigma, k1, i2, red), 1e-12);
  EXPECT_GT(max_abs(monotonicity_residual({0.5, k1, v}, rho, sigma, red)), 1e-6);
}

TEST(Residual, MatchesDefinitionAtHalf) {
  const FactorizedSpace space({2, 2});
  const Reduction red{space, {1}};
  Rng rng(6);
  const DensityMatrix rho = random_density(4, 4, rng);
  const DensityMatrix sigma = random_density(4, 4, rng);
  const Matrix rho1 = red.trace_out(rho.matrix());
  const Matrix sigma1 = red.trace_out(sigma.matrix());
  const Matrix expected =
      space.embed(sqrt_of(sigma1) * inverse_sqrt(rho1), {1}) * sqrt_of(rho.matrix()) -
      sqrt_of(sigma.matrix());
  const Matrix i2 = Matrix::Identity(2, 2);
  EXPECT_LT(max_abs(monotonicity_residual({0.5, i2, i2}, rho, sigma, red) - expected), 1e-10);
}

TEST(SsaResidual, PVanishesOnMarkovProduct) {
  const FactorizedSpace abc({2, 2, 2});
  Rng rng(7);
  const DensityMatrix sigma_ab = random_density(4, 4, rng);
  const DensityMatrix tau = random_density(2, 2, rng);
  const DensityMatrix rho(tensor(sigma_ab.matrix(), tau.matrix()));
  for (double b : {0.25, 0.5, 0.75}) {
    EXPECT_LT(max_abs(ssa_residual_P(rho, sigma_ab, b, abc)), 1e-12);
  }
}

TEST(SsaResidual, QVanishesOnMarkovProduct) {
  const FactorizedSpace abc({2, 2, 2});
  Rng rng(8);
  const DensityMatrix rho_ab = random_density(4, 4, rng);
  const DensityMatrix tau = random_density(2, 2, rng);
  const DensityMatrix sigma(tensor(rho_ab.matrix(), tau.matrix()));
  for (double b : {0.25, 0.5, 0.75}) {
    EXPECT_LT(max_abs(ssa_residual_Q(rho_ab, sigma, b, abc)), 1e-12);
  }
}

TEST(SsaResidual, RejectsBipartiteSpace) {
  const DensityMatrix rho = random_density(4, 4, 1);
  const DensityMatrix sigma = random_density(2, 2, 2);
  EXPECT_THROW(ssa_residual_P(rho, sigma, 0.5, FactorizedSpace({2, 2})), InvalidParameter);
}
