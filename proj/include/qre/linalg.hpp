// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qre {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double kPsd = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kHermiticity = 1e-10;
inline constexpr double kReconstruct = 1e-8;
inline constexpr double kDegeneracy = 1e-9;
// |<phi_k|X|psi_j>|^2 below this is treated as an exact zero when the
// scalar function is infinite on that block.
inline constexpr double kOverlap = 1e-14;
}  // namespace tol

// Square complex matrix checked to be self-adjoint (relative to its largest
// entry) and then exactly symmetrized.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Matrix& m, double tolerance = tol::kHermiticity);

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  Matrix m_;
};

struct Norms {
  double trace = 0.0;
  double hs = 0.0;
  double op = 0.0;
};

// Schatten 1, 2 and infinity norms from one SVD.
Norms norms(const Matrix& m);
double trace_norm(const Matrix& m);
double hs_norm(const Matrix& m);
double op_norm(const Matrix& m);

Matrix tensor(const Matrix& a, const Matrix& b);
Matrix commutator(const Matrix& a, const Matrix& b);
Matrix hermitian_part(const Matrix& m);
double real_trace(const Matrix& m);

void require_square(const Matrix& m, const char* what);
void require_same_shape(const Matrix& a, const Matrix& b, const char* what);

}  // namespace qre
