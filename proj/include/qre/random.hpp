// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

#include "qre/linalg.hpp"
#include "qre/spectral.hpp"

namespace qre {

// splitmix64 step; used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return uniform_(engine_); }
  double normal() { return normal_(engine_); }
  cplx complex_normal() { return {normal(), normal()}; }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

Matrix ginibre(int rows, int cols, Rng& rng);

// G G* / Tr with G a dim x rank Ginibre matrix.
DensityMatrix random_density(int dim, int rank, Rng& rng);
DensityMatrix random_density(int dim, int rank, std::uint64_t seed);

// Haar unitary via QR of a Ginibre matrix with the phase correction.
Matrix random_unitary(int dim, Rng& rng);
Matrix random_unitary(int dim, std::uint64_t seed);

// Ginibre matrix rescaled to operator norm 1.
Matrix random_contraction(int dim, Rng& rng);
Matrix random_contraction(int dim, std::uint64_t seed);

Matrix random_hermitian(int dim, Rng& rng);

// Probability vector drawn uniformly from the simplex.
RealVector random_probabilities(int n, Rng& rng);

}  // namespace qre
