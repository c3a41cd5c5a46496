// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "qre/linalg.hpp"

namespace qre {

// Ordered list of tensor-factor indices. Operators on a subsystem use the
// factors in ascending order.
using Subsystem = std::vector<int>;

// H = H_0 (x) H_1 (x) ... with row-major (first factor most significant)
// index layout, the same convention as tensor().
class FactorizedSpace {
 public:
  explicit FactorizedSpace(std::vector<int> factor_dims);

  int dim() const { return dim_; }
  int num_factors() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& factor_dims() const { return dims_; }
  int subsystem_dim(const Subsystem& s) const;
  Subsystem complement(const Subsystem& s) const;
  // Space made of the listed factors only.
  FactorizedSpace restrict_to(const Subsystem& s) const;

  // Trace over every factor not in `keep`.
  Matrix partial_trace(const Matrix& m, const Subsystem& keep) const;
  // op acting on `on`, identity on the rest.
  Matrix embed(const Matrix& op, const Subsystem& on) const;
  // op acting on `on`, `rest` acting on the complement.
  Matrix embed(const Matrix& op, const Subsystem& on, const Matrix& rest) const;

 private:
  struct Split {
    std::vector<int> inner;
    std::vector<int> outer;
    int inner_dim = 1;
    int outer_dim = 1;
  };
  Split split(const Subsystem& s) const;
  void validate(const Subsystem& s) const;

  std::vector<int> dims_;
  int dim_ = 1;
};

}  // namespace qre
