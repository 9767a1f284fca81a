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
#include <vector>

#include "qdeconv/deconvolution.hpp"

namespace qdeconv {

enum class QuorumKind { GellMann, PauliProduct };

/// d^2 Hermitian observables, pairwise HS-orthogonal with norms `norms[m]` = Tr(Q_m^2).
struct QuorumBasis {
    int dim = 0;
    QuorumKind kind = QuorumKind::GellMann;
    std::vector<ComplexMatrix> elements;
    std::vector<double> norms;
};

struct ShotEstimate {
    double mean = 0.0;
    /// 0 marks an exact (noiseless) evaluation.
    std::int64_t shots = 0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
};

/// Generalized Gell-Mann basis: I/sqrt(d), then symmetric and antisymmetric off-diagonal pairs
/// for j < k, then the diagonal ladder. Orthonormal under the HS inner product.
QuorumBasis quorum_basis(int d);

/// Normalized Pauli products for d = 2^n, ordered lexicographically in (I, X, Y, Z) with the
/// first qubit most significant.
QuorumBasis pauli_quorum(int d);

QuorumBasis make_quorum(int d, QuorumKind kind);

/// a_m = Tr(Q_m A) / norms[m].
std::vector<double> decompose(const ComplexMatrix &a, const QuorumBasis &qb);

ComplexMatrix reconstruct(const std::vector<double> &coeffs, const QuorumBasis &qb);

/// Column m holds the quorum coefficients of the modified observable of Q_m.
RealMatrix chi_matrix(const GuessPair &gp, const QuorumBasis &qb);

/// Born-rule simulation of measuring Q on rho in its eigenbasis. shots == 0 returns the exact
/// expectation with zero error.
ShotEstimate sample_expectation(const ComplexMatrix &rho, const ComplexMatrix &q,
                                std::int64_t shots, std::uint64_t seed);

/// sum_{m,n} chi_{n,m} a_m <Q_n>_{Phi(rho)} with each <Q_n> sampled independently.
/// shots_per_element == 0 switches to exact traces.
ShotEstimate deconvolved_estimate(const GuessPair &gp, const ComplexMatrix &a,
                                  const ComplexMatrix &rho, const QuorumBasis &qb,
                                  std::int64_t shots_per_element, std::uint64_t seed);

}  // namespace qdeconv
