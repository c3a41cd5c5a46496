// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#include "qre/spectral.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qre/errors.hpp"

namespace qre {

SpectralDecomposition::SpectralDecomposition(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    throw InvalidMatrix("eigen-decomposition did not converge");
  }
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();

  const Eigen::Index n = values_.size();
  const double radius = std::max(std::abs(values_(0)), std::abs(values_(n - 1)));
  const double snap = tol::kDegeneracy * std::max(1.0, radius);
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i == n || values_(i) - values_(start) > snap) {
      if (i - start > 1) {
        const double mean = values_.segment(start, i - start).mean();
        values_.segment(start, i - start).setConstant(mean);
      }
      start = i;
    }
  }
}

std::vector<EigenPair> SpectralDecomposition::pairs() const {
  std::vector<EigenPair> out;
  out.reserve(values_.size());
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    out.push_back({values_(i), vectors_.col(i)});
  }
  return out;
}

double SpectralDecomposition::default_cutoff() const {
  const double radius = std::max(std::abs(min_eigenvalue()), std::abs(max_eigenvalue()));
  return dim() * std::numeric_limits<double>::epsilon() * radius;
}

Matrix SpectralDecomposition::reconstruct() const {
  return apply([](double x) { return x; });
}

Matrix SpectralDecomposition::support_projector(double cutoff) const {
  return apply([cutoff](double x) { return x > cutoff ? 1.0 : 0.0; });
}

SpectralDecomposition spectral_decompose(const HermitianMatrix& m) {
  return SpectralDecomposition(m);
}

namespace {

void require_psd(const SpectralDecomposition& s) {
  const double radius =
      std::max(std::abs(s.min_eigenvalue()), std::abs(s.max_eigenvalue()));
  if (s.min_eigenvalue() < -tol::kPsd * std::max(1.0, radius)) {
    throw NotPsd("smallest eigenvalue " + std::to_string(s.min_eigenvalue()));
  }
}

}  // namespace

Matrix matrix_power(const SpectralDecomposition& s, double beta,
                    std::optional<double> cutoff) {
  require_psd(s);
  const double c = cutoff.value_or(s.default_cutoff());
  if (beta == 0.0) {
    return s.support_projector(c);
  }
  return s.apply([beta, c](double x) { return x > c ? std::pow(x, beta) : 0.0; });
}

Matrix matrix_power(const HermitianMatrix& m, double beta, std::optional<double> cutoff) {
  return matrix_power(spectral_decompose(m), beta, cutoff);
}

PositiveOperator::PositiveOperator(const Matrix& m) : m_(m), spectrum_(m_) {
  require_psd(spectrum_);
  cutoff_ = spectrum_.default_cutoff();
  if (spectrum_.max_eigenvalue() <= cutoff_) {
    throw InvalidRank("positive operator is zero");
  }
}

double PositiveOperator::trace() const { return real_trace(m_.matrix()); }

int PositiveOperator::rank() const {
  int r = 0;
  for (Eigen::Index i = 0; i < spectrum_.eigenvalues().size(); ++i) {
    if (spectrum_.eigenvalues()(i) > cutoff_) ++r;
  }
  return r;
}

Matrix PositiveOperator::power(double beta) const {
  return matrix_power(spectrum_, beta, cutoff_);
}

Matrix PositiveOperator::log() const {
  const double c = cutoff_;
  return spectrum_.apply([c](double x) { return x > c ? std::log(x) : 0.0; });
}

Matrix PositiveOperator::support_projector() const {
  return spectrum_.support_projector(cutoff_);
}

double PositiveOperator::inverse_norm() const {
  for (Eigen::Index i = 0; i < spectrum_.eigenvalues().size(); ++i) {
    if (spectrum_.eigenvalues()(i) > cutoff_) return 1.0 / spectrum_.eigenvalues()(i);
  }
  return 0.0;
}

DensityMatrix::DensityMatrix(const Matrix& m) : PositiveOperator(m) {
  if (std::abs(trace() - 1.0) > tol::kTrace) {
    throw InvalidMatrix("density matrix trace is " + std::to_string(trace()));
  }
}

JordanHahn jordan_hahn(const HermitianMatrix& a) {
  SpectralDecomposition s(a);
  JordanHahn out;
  out.positive = s.apply([](double x) { return x > 0.0 ? x : 0.0; });
  out.negative = s.apply([](double x) { return x < 0.0 ? -x : 0.0; });
  out.projector = s.apply([](double x) { return x > 0.0 ? 1.0 : 0.0; });
  return out;
}

}  // namespace qre
