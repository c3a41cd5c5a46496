// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>

#include "qre/linalg.hpp"
#include "qre/opfunc.hpp"
#include "qre/spectral.hpp"

namespace qre {

// Scalar function applied through the modular calculus. at_zero is g(0+)
// when finite; an infinite g(0+) is only tolerated on blocks the argument
// does not touch.
struct ScalarFunction {
  std::function<double(double)> eval;
  std::optional<double> at_zero;
};

ScalarFunction scalar_function(const OperatorConvexFunction& f);

// Delta_{sigma,rho}(X) = sigma X rho^{-1} acting on d x d matrices, with
// rho^{-1} the generalized inverse. Never formed as a d^2 x d^2 matrix: in the
// eigenbases sigma = Phi diag(mu) Phi*, rho = Psi diag(lambda) Psi*,
//   g(Delta)(X) = Phi [ (Phi* X Psi) o G ] Psi*,  G_kj = g(mu_k / lambda_j),
// restricted to lambda_j above the cutoff.
class ModularOperator {
 public:
  ModularOperator(const PositiveOperator& sigma, const PositiveOperator& rho);

  int dim() const { return static_cast<int>(mu_.size()); }
  Matrix apply(const Matrix& x) const;
  // max mu / min lambda over the support of rho.
  double norm() const;
  Matrix apply_function(const ScalarFunction& g, const Matrix& x) const;
  Matrix apply_function(const OperatorConvexFunction& f, const Matrix& x) const;

 private:
  RealVector mu_;
  RealVector lambda_;
  Matrix phi_;
  Matrix psi_;
  double mu_cut_ = 0.0;
  double lambda_cut_ = 0.0;
};

}  // namespace qre
