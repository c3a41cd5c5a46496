// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#include "qre/linalg.hpp"

#include <algorithm>
#include <string>

#include "qre/errors.hpp"

namespace qre {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ShapeMismatch(std::string(what) + " must be a non-empty square matrix, got " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) {
    throw InvalidMatrix(std::string(what) + " has non-finite entries");
  }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeMismatch(std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                        "x" + std::to_string(b.cols()));
  }
}

HermitianMatrix::HermitianMatrix(const Matrix& m, double tolerance) {
  require_square(m, "Hermitian matrix");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double skew = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (skew > tolerance * scale) {
    throw InvalidMatrix("matrix is not Hermitian (max |M - M*| = " + std::to_string(skew) +
                        ")");
  }
  m_ = hermitian_part(m);
}

Norms norms(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const RealVector& s = svd.singularValues();
  Norms out;
  out.trace = s.sum();
  out.hs = s.norm();
  out.op = s.size() > 0 ? s.maxCoeff() : 0.0;
  return out;
}

double trace_norm(const Matrix& m) { return norms(m).trace; }

// Frobenius norm equals the Schatten-2 norm; no SVD needed.
double hs_norm(const Matrix& m) { return m.norm(); }

double op_norm(const Matrix& m) { return norms(m).op; }

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double real_trace(const Matrix& m) { return m.trace().real(); }

}  // namespace qre
