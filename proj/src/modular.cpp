// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#include "qre/modular.hpp"

#include <string>

#include "qre/errors.hpp"

namespace qre {

ScalarFunction scalar_function(const OperatorConvexFunction& f) {
  return {[f](double x) { return f(x); }, f.value_at_zero()};
}

ModularOperator::ModularOperator(const PositiveOperator& sigma, const PositiveOperator& rho)
    : mu_(sigma.spectrum().eigenvalues()),
      lambda_(rho.spectrum().eigenvalues()),
      phi_(sigma.spectrum().eigenvectors()),
      psi_(rho.spectrum().eigenvectors()),
      mu_cut_(sigma.cutoff()),
      lambda_cut_(rho.cutoff()) {
  if (sigma.dim() != rho.dim()) {
    throw ShapeMismatch("modular operator: sigma is " + std::to_string(sigma.dim()) +
                        "-dimensional, rho is " + std::to_string(rho.dim()));
  }
}

Matrix ModularOperator::apply(const Matrix& x) const {
  return apply_function({[](double t) { return t; }, 0.0}, x);
}

double ModularOperator::norm() const {
  double lmin = 0.0;
  for (Eigen::Index j = 0; j < lambda_.size(); ++j) {
    if (lambda_(j) > lambda_cut_) {
      lmin = lambda_(j);
      break;
    }
  }
  return mu_.maxCoeff() / lmin;
}

Matrix ModularOperator::apply_function(const ScalarFunction& g, const Matrix& x) const {
  if (x.rows() != dim() || x.cols() != dim()) {
    throw ShapeMismatch("modular operator argument has the wrong shape");
  }
  Matrix y = phi_.adjoint() * x * psi_;
  for (Eigen::Index j = 0; j < lambda_.size(); ++j) {
    if (lambda_(j) <= lambda_cut_) {
      y.col(j).setZero();
      continue;
    }
    for (Eigen::Index k = 0; k < mu_.size(); ++k) {
      if (mu_(k) > mu_cut_) {
        y(k, j) *= g.eval(mu_(k) / lambda_(j));
      } else if (g.at_zero) {
        y(k, j) *= *g.at_zero;
      } else if (std::norm(y(k, j)) <= tol::kOverlap) {
        y(k, j) = 0.0;
      } else {
        throw SingularArgument("g(0+) is infinite on a block the argument touches",
                               static_cast<int>(k), static_cast<int>(j));
      }
    }
  }
  return phi_ * y * psi_.adjoint();
}

Matrix ModularOperator::apply_function(const OperatorConvexFunction& f, const Matrix& x) const {
  return apply_function(scalar_function(f), x);
}

}  // namespace qre
