// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#include "qre/space.hpp"

#include <string>

#include "qre/errors.hpp"

namespace qre {

FactorizedSpace::FactorizedSpace(std::vector<int> factor_dims) : dims_(std::move(factor_dims)) {
  if (dims_.empty()) throw InvalidParameter("factorized space needs at least one factor");
  for (int d : dims_) {
    if (d < 1) throw InvalidParameter("factor dimension must be >= 1");
    dim_ *= d;
  }
}

void FactorizedSpace::validate(const Subsystem& s) const {
  int prev = -1;
  for (int f : s) {
    if (f <= prev || f >= num_factors()) {
      throw InvalidParameter("subsystem indices must be strictly increasing and < " +
                             std::to_string(num_factors()));
    }
    prev = f;
  }
}

int FactorizedSpace::subsystem_dim(const Subsystem& s) const {
  validate(s);
  int d = 1;
  for (int f : s) d *= dims_[f];
  return d;
}

Subsystem FactorizedSpace::complement(const Subsystem& s) const {
  validate(s);
  Subsystem out;
  std::size_t pos = 0;
  for (int f = 0; f < num_factors(); ++f) {
    if (pos < s.size() && s[pos] == f) {
      ++pos;
    } else {
      out.push_back(f);
    }
  }
  return out;
}

FactorizedSpace FactorizedSpace::restrict_to(const Subsystem& s) const {
  validate(s);
  if (s.empty()) return FactorizedSpace({1});
  std::vector<int> d;
  for (int f : s) d.push_back(dims_[f]);
  return FactorizedSpace(d);
}

// For every full index, the positions inside the sub- and complementary
// spaces.
FactorizedSpace::Split FactorizedSpace::split(const Subsystem& s) const {
  validate(s);
  std::vector<bool> in(dims_.size(), false);
  for (int f : s) in[f] = true;
  Split out;
  out.inner.resize(dim_);
  out.outer.resize(dim_);
  for (int f = 0; f < num_factors(); ++f) {
    (in[f] ? out.inner_dim : out.outer_dim) *= dims_[f];
  }
  std::vector<int> digit(dims_.size(), 0);
  for (int idx = 0; idx < dim_; ++idx) {
    int rem = idx;
    for (int f = num_factors() - 1; f >= 0; --f) {
      digit[f] = rem % dims_[f];
      rem /= dims_[f];
    }
    int a = 0;
    int b = 0;
    for (int f = 0; f < num_factors(); ++f) {
      if (in[f]) {
        a = a * dims_[f] + digit[f];
      } else {
        b = b * dims_[f] + digit[f];
      }
    }
    out.inner[idx] = a;
    out.outer[idx] = b;
  }
  return out;
}

Matrix FactorizedSpace::partial_trace(const Matrix& m, const Subsystem& keep) const {
  if (m.rows() != dim_ || m.cols() != dim_) {
    throw ShapeMismatch("partial_trace: operator is " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + ", space has dimension " +
                        std::to_string(dim_));
  }
  const Split sp = split(keep);
  Matrix out = Matrix::Zero(sp.inner_dim, sp.inner_dim);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      if (sp.outer[i] == sp.outer[j]) out(sp.inner[i], sp.inner[j]) += m(i, j);
    }
  }
  return out;
}

Matrix FactorizedSpace::embed(const Matrix& op, const Subsystem& on) const {
  const Split sp = split(on);
  return embed(op, on, Matrix::Identity(sp.outer_dim, sp.outer_dim));
}

Matrix FactorizedSpace::embed(const Matrix& op, const Subsystem& on, const Matrix& rest) const {
  const Split sp = split(on);
  if (op.rows() != sp.inner_dim || op.cols() != sp.inner_dim || rest.rows() != sp.outer_dim ||
      rest.cols() != sp.outer_dim) {
    throw ShapeMismatch("embed: operator shapes do not match the subsystem dimensions");
  }
  Matrix out(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      out(i, j) = op(sp.inner[i], sp.inner[j]) * rest(sp.outer[i], sp.outer[j]);
    }
  }
  return out;
}

}  // namespace qre
