// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#include "qre/random.hpp"

#include <cmath>

#include "qre/errors.hpp"

namespace qre {

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix ginibre(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  }
  return g;
}

DensityMatrix random_density(int dim, int rank, Rng& rng) {
  if (dim < 1) throw InvalidParameter("dimension must be >= 1");
  if (rank < 1 || rank > dim) throw InvalidRank("rank must lie in [1, dim]");
  const Matrix g = ginibre(dim, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(hermitian_part(rho));
}

DensityMatrix random_density(int dim, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rank, rng);
}

Matrix random_unitary(int dim, Rng& rng) {
  const Matrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

Matrix random_unitary(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(dim, rng);
}

Matrix random_contraction(int dim, Rng& rng) {
  const Matrix g = ginibre(dim, dim, rng);
  return g / op_norm(g);
}

Matrix random_contraction(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_contraction(dim, rng);
}

Matrix random_hermitian(int dim, Rng& rng) {
  return hermitian_part(ginibre(dim, dim, rng));
}

RealVector random_probabilities(int n, Rng& rng) {
  RealVector p(n);
  for (int i = 0; i < n; ++i) p(i) = -std::log(1.0 - rng.uniform());
  return p / p.sum();
}

}  // namespace qre
