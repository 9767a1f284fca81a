// Copyright 2026 The qdeconv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qdeconv/linalg.hpp"

namespace qdeconv {

/// The generator every sampler takes. Callers own it; nothing here keeps global state.
using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Independent stream for (seed, index), stable across platforms and thread schedules.
Rng derive_rng(std::uint64_t seed, std::uint64_t index);

/// d x d matrix with i.i.d. standard complex Gaussian entries.
ComplexMatrix ginibre(int d, Rng &rng);
ComplexMatrix ginibre(int rows, int cols, Rng &rng);

/// G G^dagger / Tr(G G^dagger) for a Ginibre G.
ComplexMatrix random_density_matrix(int d, Rng &rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with the R-diagonal phases removed).
ComplexMatrix random_unitary(int d, Rng &rng);

/// (G + G^dagger) / 2 for a Ginibre G.
ComplexMatrix random_hermitian(int d, Rng &rng);

/// Uniform point on the probability simplex with `n` entries.
std::vector<double> random_probabilities(int n, Rng &rng);

/// Kraus operators of a random CPTP map: blocks of a Haar isometry C^d -> C^(d*n_kraus).
std::vector<ComplexMatrix> random_kraus(int d, int n_kraus, Rng &rng);

}  // namespace qdeconv
