// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "qre/errors.hpp"
#include "qre/linalg.hpp"
#include "qre/matrix_io.hpp"
#include "qre/random.hpp"
#include "qre/space.hpp"
#include "qre/spectral.hpp"

using namespace qre;

namespace {

Matrix diag(std::initializer_list<double> v) {
  RealVector d(v.size());
  int i = 0;
  for (double x : v) d(i++) = x;
  return d.cast<cplx>().asDiagonal();
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Spectral, DiagonalDecomposition) {
  const auto s = spectral_decompose(HermitianMatrix(diag({0.7, 0.3})));
  const auto pairs = s.pairs();
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_NEAR(pairs[0].value, 0.3, 1e-15);
  EXPECT_NEAR(pairs[1].value, 0.7, 1e-15);
  EXPECT_NEAR(std::abs(pairs[0].vector(1)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(pairs[1].vector(0)), 1.0, 1e-15);
}

TEST(Spectral, ReconstructsRandomHermitian) {
  Rng rng(7);
  for (int n : {1, 2, 3, 5, 8}) {
    const Matrix a = random_hermitian(n, rng);
    const auto s = spectral_decompose(HermitianMatrix(a));
    EXPECT_LT(max_abs(s.reconstruct() - a), tol::kReconstruct);
    const Matrix& v = s.eigenvectors();
    EXPECT_LT(max_abs(v.adjoint() * v - Matrix::Identity(n, n)), 1e-12);
  }
}

TEST(Spectral, DegenerateSpectrumIsBasisIndependent) {
  Rng rng(11);
  const Matrix u = random_unitary(4, rng);
  const Matrix d = diag({0.5, 0.5, 0.5, 2.0});
  Matrix a = u * d * u.adjoint();
  // Perturbation below the degeneracy tolerance.
  a += 1e-12 * random_hermitian(4, rng);
  const auto s = spectral_decompose(HermitianMatrix(hermitian_part(a)));
  EXPECT_DOUBLE_EQ(s.eigenvalues()(0), s.eigenvalues()(2));
  const Matrix got = s.apply([](double x) { return std::sqrt(x); });
  const Matrix want = u * diag({std::sqrt(0.5), std::sqrt(0.5), std::sqrt(0.5), std::sqrt(2.0)}) *
                      u.adjoint();
  EXPECT_LT(max_abs(got - want), 1e-10);
}

TEST(Spectral, GeneralizedInversePower) {
  const Matrix got = matrix_power(HermitianMatrix(diag({0.0, 0.5, 0.5})), -1.0);
  EXPECT_LT(max_abs(got - diag({0.0, 2.0, 2.0})), 1e-14);
}

TEST(Spectral, PowerRejectsNegativeSpectrum) {
  EXPECT_THROW(matrix_power(HermitianMatrix(diag({-0.1, 1.0})), 0.5), NotPsd);
}

TEST(Spectral, PowersCompose) {
  const DensityMatrix rho = random_density(4, 4, 3);
  const Matrix a = rho.power(0.3);
  const Matrix b = rho.power(0.45);
  EXPECT_LT(max_abs(a * b - rho.power(0.75)), 1e-13);
  EXPECT_LT(max_abs(rho.power(-0.5) * rho.power(0.5) - Matrix::Identity(4, 4)), 1e-9);
}

TEST(Spectral, HermitianValidation) {
  Matrix m = diag({1.0, 2.0});
  m(0, 1) = cplx(0.0, 1.0);
  EXPECT_THROW(HermitianMatrix{m}, InvalidMatrix);
  EXPECT_THROW(HermitianMatrix(Matrix::Zero(2, 3)), ShapeMismatch);
}

TEST(Spectral, DensityValidation) {
  EXPECT_THROW(DensityMatrix(diag({0.5, 0.6})), InvalidMatrix);
  EXPECT_THROW(DensityMatrix(diag({1.2, -0.2})), NotPsd);
  EXPECT_NO_THROW(DensityMatrix(diag({1.0, 0.0})));
}

TEST(Norms, PauliX) {
  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const Norms n = norms(x);
  EXPECT_NEAR(n.trace, 2.0, 1e-14);
  EXPECT_NEAR(n.hs, std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(n.op, 1.0, 1e-14);
  EXPECT_NEAR(hs_norm(x), std::sqrt(2.0), 1e-14);
}

TEST(Norms, OrderingAndTriangle) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const Matrix a = ginibre(4, 4, rng);
    const Matrix b = ginibre(4, 4, rng);
    const Norms n = norms(a);
    EXPECT_LE(n.op, n.hs + 1e-12);
    EXPECT_LE(n.hs, n.trace + 1e-12);
    EXPECT_LE(trace_norm(a + b), trace_norm(a) + trace_norm(b) + 1e-12);
    EXPECT_NEAR(hs_norm(a), norms(a).hs, 1e-12);
  }
}

TEST(JordanHahn, Diagonal) {
  const JordanHahn jh = jordan_hahn(HermitianMatrix(diag({0.4, -0.1})));
  EXPECT_LT(max_abs(jh.positive - diag({0.4, 0.0})), 1e-15);
  EXPECT_LT(max_abs(jh.negative - diag({0.0, 0.1})), 1e-15);
  EXPECT_LT(max_abs(jh.projector - diag({1.0, 0.0})), 1e-15);
}

TEST(JordanHahn, TraceDistanceIdentity) {
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const auto rho = random_density(3, 3, rng);
    const auto sigma = random_density(3, 3, rng);
    const Matrix d = rho.matrix() - sigma.matrix();
    const JordanHahn jh = jordan_hahn(HermitianMatrix(d));
    EXPECT_LT(max_abs(jh.positive - jh.negative - d), 1e-12);
    EXPECT_LT(max_abs(jh.positive * jh.negative), 1e-12);
    EXPECT_NEAR(2.0 * real_trace(jh.projector * d), trace_norm(d), 1e-12);
  }
}

TEST(Space, PartialTraceOfBellMixture) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = 0.5;
  const FactorizedSpace ab({2, 2});
  EXPECT_LT(max_abs(ab.partial_trace(m, {0}) - 0.5 * Matrix::Identity(2, 2)), 1e-15);
  EXPECT_LT(max_abs(ab.partial_trace(m, {1}) - 0.5 * Matrix::Identity(2, 2)), 1e-15);
}

TEST(Space, PartialTraceOfProducts) {
  Rng rng(13);
  const Matrix a = ginibre(2, 2, rng);
  const Matrix b = ginibre(3, 3, rng);
  const Matrix c = ginibre(2, 2, rng);
  const FactorizedSpace abc({2, 3, 2});
  const Matrix abc_op = tensor(tensor(a, b), c);
  EXPECT_LT(max_abs(abc.partial_trace(abc_op, {0, 2}) - b.trace() * tensor(a, c)), 1e-12);
  EXPECT_LT(max_abs(abc.partial_trace(abc_op, {1}) - a.trace() * c.trace() * b), 1e-12);
  EXPECT_LT(max_abs(abc.partial_trace(abc_op, {}) - abc_op.trace() * Matrix::Identity(1, 1)),
            1e-12);
  EXPECT_LT(max_abs(abc.partial_trace(abc_op, {0, 1, 2}) - abc_op), 1e-15);
}

TEST(Space, EmbedMatchesTensor) {
  Rng rng(17);
  const Matrix a = ginibre(2, 2, rng);
  const Matrix c = ginibre(3, 3, rng);
  const Matrix v = ginibre(2, 2, rng);
  const FactorizedSpace abc({2, 2, 3});
  const Matrix i2 = Matrix::Identity(2, 2);
  EXPECT_LT(max_abs(abc.embed(a, {1}) - tensor(tensor(i2, a), Matrix::Identity(3, 3))), 1e-15);
  EXPECT_LT(max_abs(abc.embed(tensor(a, c), {0, 2}, v) - tensor(tensor(a, v), c)), 1e-13);
  EXPECT_EQ(abc.complement({1}), (Subsystem{0, 2}));
  EXPECT_THROW(abc.embed(a, {2}), ShapeMismatch);
  EXPECT_THROW(abc.partial_trace(a, {0}), ShapeMismatch);
  EXPECT_THROW(abc.partial_trace(Matrix::Identity(12, 12), {1, 0}), InvalidParameter);
}

TEST(Space, PartialTraceIsAdjointOfEmbedding) {
  Rng rng(19);
  const FactorizedSpace abc({2, 3, 2});
  const Matrix x = ginibre(12, 12, rng);
  const Matrix y = ginibre(4, 4, rng);
  const cplx lhs = (abc.partial_trace(x, {0, 2}) * y).trace();
  const cplx rhs = (x * abc.embed(y, {0, 2})).trace();
  EXPECT_LT(std::abs(lhs - rhs), 1e-12);
}

TEST(Random, DensityProperties) {
  Rng rng(23);
  for (int rank : {1, 2, 4}) {
    const auto rho = random_density(4, rank, rng);
    EXPECT_NEAR(rho.trace(), 1.0, 1e-14);
    EXPECT_EQ(rho.rank(), rank);
    EXPECT_GE(rho.spectrum().min_eigenvalue(), -1e-14);
  }
  EXPECT_THROW(random_density(3, 4, rng), InvalidRank);
}

TEST(Random, SeedsAreReproducible) {
  EXPECT_EQ(random_density(3, 3, 99).matrix(), random_density(3, 3, 99).matrix());
  EXPECT_NE(random_density(3, 3, 99).matrix(), random_density(3, 3, 100).matrix());
  EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
}

TEST(Random, UnitaryAndContraction) {
  const Matrix u = random_unitary(5, 3);
  EXPECT_LT(max_abs(u.adjoint() * u - Matrix::Identity(5, 5)), 1e-13);
  EXPECT_NEAR(op_norm(random_contraction(4, 3)), 1.0, 1e-13);
}

TEST(MatrixIo, RoundTrip) {
  const Matrix m = random_density(3, 3, 5).matrix();
  EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
  EXPECT_EQ(digest(m), digest(m));
  EXPECT_NE(digest(m), digest(2.0 * m));
}

TEST(MatrixIo, RealOnlyAndMalformed) {
  const auto j = nlohmann::json::parse(R"({"dim":2,"re":[[0.5,0],[0,0.5]]})");
  EXPECT_EQ(matrix_from_json(j), diag({0.5, 0.5}));
  EXPECT_THROW(matrix_from_json(nlohmann::json::parse(R"({"dim":2,"re":[[1]]})")), InputError);
  EXPECT_THROW(matrix_from_json(nlohmann::json::parse(R"({"re":[[1]]})")), InputError);
  EXPECT_THROW(read_matrix_file("/nonexistent/x.json"), InputError);
}
