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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qdeconv {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Numerical thresholds shared by all modules.
struct Tolerances {
    /// Invariant checks (Hermiticity, trace preservation, unitarity).
    double tol = 1e-9;
    /// Invertibility cutoff on sigma_min / sigma_max.
    double singular_cutoff = 1e-8;
    /// Kernel extraction cutoff relative to the largest singular value.
    double kernel_rel_tol = 1e-8;
    /// Two eigenvalues of W closer than this are treated as degenerate.
    double eig_group_tol = 1e-8;
};

/// Largest supported system dimension; d^2 x d^2 dense matrices beyond this get unwieldy.
inline constexpr int kMaxDim = 64;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct SingularChannel : Error {
    using Error::Error;
};
struct NonUnitary : Error {
    using Error::Error;
};
struct InvalidProbability : Error {
    using Error::Error;
};
struct InvalidState : Error {
    using Error::Error;
};

// Vectorization is row-major: vec(M)[i*d + j] = M(i, j).
ComplexVector vectorize(const ComplexMatrix &m);
ComplexMatrix devectorize(const ComplexVector &v, int d);

/// Tr(X^dagger Y).
Complex hs_inner(const ComplexMatrix &x, const ComplexMatrix &y);

/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

bool is_square(const ComplexMatrix &m);
bool is_hermitian(const ComplexMatrix &m, double tol);
bool is_unitary(const ComplexMatrix &m, double tol);
bool is_psd(const ComplexMatrix &m, double tol);
/// Hermitian, PSD and unit trace within tol.
bool is_density_matrix(const ComplexMatrix &m, double tol);

/// ||U^dagger U - I||_F.
double unitarity_residual(const ComplexMatrix &u);
double hermiticity_residual(const ComplexMatrix &m);
/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const ComplexMatrix &m);

/// Orthonormal basis of {x : m x = 0}, singular values <= rel_tol * sigma_max treated as zero.
/// Columns are ordered by ascending singular value. A zero matrix has a full kernel.
ComplexMatrix null_space(const ComplexMatrix &m, double rel_tol);
RealMatrix null_space(const RealMatrix &m, double rel_tol);

/// Orthonormal basis for the column span of `vectors` (rank decided by `tol` relative to the
/// largest singular value). Column order of the result is deterministic given the input.
ComplexMatrix orthonormal_span(const ComplexMatrix &vectors, double tol);

/// Orthonormal basis of span(a) intersected with span(b); a and b must have orthonormal columns.
ComplexMatrix intersect_spans(const ComplexMatrix &a, const ComplexMatrix &b, double tol);

/// Rewrites an orthonormal basis into a form that depends only on its span: reduced echelon form
/// of the basis vectors (pivots scanned by ascending coordinate), then Gram-Schmidt with one
/// re-orthogonalization pass. Coordinate-aligned spans come back as unit vectors.
ComplexMatrix canonical_basis(const ComplexMatrix &basis, double pivot_tol = 1e-8);
RealMatrix canonical_basis(const RealMatrix &basis, double pivot_tol = 1e-8);

/// ||v - P v|| / ||v|| where P projects onto the (orthonormal) columns of basis. 0 for v = 0.
double projection_residual(const ComplexVector &v, const ComplexMatrix &basis);

/// Largest projection residual of either span's basis onto the other; 1 if dimensions differ.
double span_distance(const ComplexMatrix &a, const ComplexMatrix &b);

/// Packs a list of vectors into the columns of a matrix (rows = `dim`).
ComplexMatrix columns(const std::vector<ComplexVector> &vectors, Eigen::Index dim);
std::vector<ComplexVector> column_list(const ComplexMatrix &m);

}  // namespace qdeconv
