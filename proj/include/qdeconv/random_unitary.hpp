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

#include <utility>
#include <vector>

#include "qdeconv/deconvolution.hpp"

namespace qdeconv {

/// Known unitary errors {U_k} with unknown probabilities; U_g = unitaries[guess_index].
class UnitaryErrorSet {
  public:
    UnitaryErrorSet(std::vector<ComplexMatrix> unitaries, std::size_t guess_index,
                    double tol = Tolerances{}.tol);

    int dim() const { return dim_; }
    const std::vector<ComplexMatrix> &unitaries() const { return unitaries_; }
    std::size_t guess_index() const { return guess_index_; }
    const ComplexMatrix &guess() const { return unitaries_[guess_index_]; }
    std::size_t size() const { return unitaries_.size(); }

    UnitaryErrorSet with_guess(std::size_t guess_index) const;

  private:
    int dim_ = 0;
    std::vector<ComplexMatrix> unitaries_;
    std::size_t guess_index_ = 0;
};

/// Eigensystem of a unitary with its eigenvalues grouped into degeneracy classes.
struct EigGrouping {
    std::vector<Complex> eigenvalues;
    /// Indices into `eigenvalues`, one list per degeneracy class.
    std::vector<std::vector<std::size_t>> groups;
    /// Orthonormal; eigenvectors[k] belongs to eigenvalues[k].
    std::vector<ComplexVector> eigenvectors;
};

/// Eigendecomposition of a unitary via complex Schur form (orthonormal for normal matrices).
/// Eigenvalues are ordered by phase in (-pi, pi]; each eigenvector's largest entry is made real
/// positive.
EigGrouping group_eigenvalues(const ComplexMatrix &u, double group_tol = Tolerances{}.eig_group_tol);

/// U_i^dagger U_g (x) conj(U_i^dagger U_g).
ComplexMatrix gamma_i(const UnitaryErrorSet &es, std::size_t i);

/// Orthonormal basis of the eigenvalue-1 eigenspace of a unitary G.
std::vector<ComplexVector> invariant_subspace(const ComplexMatrix &g, double tol = 1e-8);

/// Hermitian section of the intersection of invariant subspaces over all i != g.
ObservableFamily ru_correctable_family(const UnitaryErrorSet &es, double tol = 1e-8);

/// W = U1^dagger U2, its eigen-grouping, and the Hermitian span of |w_a><w_b| within each
/// degeneracy class.
std::pair<EigGrouping, ObservableFamily> two_unitary_family(
    const ComplexMatrix &u1, const ComplexMatrix &u2, const Tolerances &tol = {});

/// Hermitian operators commuting with every U_k.
ObservableFamily commutant_family(const std::vector<ComplexMatrix> &us, double tol = 1e-8);

}  // namespace qdeconv
