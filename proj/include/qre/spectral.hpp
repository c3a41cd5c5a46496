// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "qre/linalg.hpp"

namespace qre {

struct EigenPair {
  double value = 0.0;
  Vector vector;
};

// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
// Eigenvalues closer than kDegeneracy (relative to the spectral radius) are
// snapped to their group mean, so g(lambda) is constant on a degenerate
// eigenspace regardless of which basis the solver returned.
class SpectralDecomposition {
 public:
  explicit SpectralDecomposition(const HermitianMatrix& m);

  int dim() const { return static_cast<int>(values_.size()); }
  const RealVector& eigenvalues() const { return values_; }
  const Matrix& eigenvectors() const { return vectors_; }
  std::vector<EigenPair> pairs() const;

  double max_eigenvalue() const { return values_(values_.size() - 1); }
  double min_eigenvalue() const { return values_(0); }
  // dim * eps * spectral radius.
  double default_cutoff() const;

  // Sum_i g(lambda_i) |v_i><v_i|.
  template <class G>
  Matrix apply(G&& g) const {
    RealVector w(values_.size());
    for (Eigen::Index i = 0; i < values_.size(); ++i) w(i) = g(values_(i));
    return vectors_ * w.asDiagonal() * vectors_.adjoint();
  }

  Matrix reconstruct() const;
  // Projector onto the span of eigenvectors with eigenvalue > cutoff.
  Matrix support_projector(double cutoff) const;

 private:
  RealVector values_;
  Matrix vectors_;
};

SpectralDecomposition spectral_decompose(const HermitianMatrix& m);

// A^beta on the support (eigenvalues <= cutoff map to 0). Negative powers are
// therefore generalized inverses. Throws NotPsd for eigenvalues below
// -kPsd * max(1, |lambda|_max).
Matrix matrix_power(const SpectralDecomposition& s, double beta,
                    std::optional<double> cutoff = std::nullopt);
Matrix matrix_power(const HermitianMatrix& m, double beta,
                    std::optional<double> cutoff = std::nullopt);

// Positive semidefinite operator with its cached spectrum. Used wherever an
// unnormalized argument is allowed (sigma_AB (x) I_C and the like).
class PositiveOperator {
 public:
  explicit PositiveOperator(const Matrix& m);
  virtual ~PositiveOperator() = default;

  const Matrix& matrix() const { return m_.matrix(); }
  const SpectralDecomposition& spectrum() const { return spectrum_; }
  int dim() const { return m_.dim(); }
  double cutoff() const { return cutoff_; }
  double trace() const;
  int rank() const;
  bool full_rank() const { return rank() == dim(); }

  Matrix power(double beta) const;
  // Natural logarithm on the support, 0 on the kernel.
  Matrix log() const;
  Matrix support_projector() const;
  double norm() const { return spectrum_.max_eigenvalue(); }
  // Norm of the generalized inverse: 1 / smallest eigenvalue above cutoff.
  double inverse_norm() const;

 private:
  HermitianMatrix m_;
  SpectralDecomposition spectrum_;
  double cutoff_ = 0.0;
};

// Positive operator with unit trace (within kTrace).
class DensityMatrix : public PositiveOperator {
 public:
  explicit DensityMatrix(const Matrix& m);
};

struct JordanHahn {
  Matrix positive;   // P
  Matrix negative;   // Q, with A = P - Q and P Q = 0
  Matrix projector;  // onto the support of P
};

JordanHahn jordan_hahn(const HermitianMatrix& a);

}  // namespace qre
