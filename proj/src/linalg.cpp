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

#include "qdeconv/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qdeconv {

ComplexVector vectorize(const ComplexMatrix &m) {
    if (!is_square(m)) {
        throw DimensionMismatch("vectorize: matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", expected square");
    }
    const Eigen::Index d = m.rows();
    ComplexVector v(d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            v(i * d + j) = m(i, j);
        }
    }
    return v;
}

ComplexMatrix devectorize(const ComplexVector &v, int d) {
    if (d <= 0 || v.size() != Eigen::Index(d) * d) {
        throw DimensionMismatch("devectorize: vector of length " + std::to_string(v.size()) +
                                " does not match d = " + std::to_string(d));
    }
    ComplexMatrix m(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            m(i, j) = v(Eigen::Index(i) * d + j);
        }
    }
    return m;
}

Complex hs_inner(const ComplexMatrix &x, const ComplexMatrix &y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw DimensionMismatch("hs_inner: shape mismatch");
    }
    // Tr(X^dagger Y) = sum_ij conj(X_ij) Y_ij
    return (x.conjugate().cwiseProduct(y)).sum();
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

bool is_square(const ComplexMatrix &m) { return m.rows() == m.cols() && m.rows() > 0; }

double hermiticity_residual(const ComplexMatrix &m) { return (m - m.adjoint()).norm(); }

double unitarity_residual(const ComplexMatrix &u) {
    return (u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols())).norm();
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    return is_square(m) && hermiticity_residual(m) <= tol;
}

bool is_unitary(const ComplexMatrix &m, double tol) {
    return is_square(m) && unitarity_residual(m) <= tol;
}

double min_eigenvalue(const ComplexMatrix &m) {
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool is_psd(const ComplexMatrix &m, double tol) {
    return is_hermitian(m, tol) && min_eigenvalue(m) >= -tol;
}

bool is_density_matrix(const ComplexMatrix &m, double tol) {
    return is_psd(m, tol) && std::abs(m.trace() - Complex(1.0)) <= tol;
}

namespace {

template <typename Matrix>
Matrix null_space_impl(const Matrix &m, double rel_tol) {
    const Eigen::Index n = m.cols();
    if (m.rows() == 0) {
        return Matrix::Identity(n, n);
    }
    // wide inputs are zero-padded to square; BDCSVD's full V for wide matrices is unreliable
    Matrix padded = Matrix::Zero(std::max(m.rows(), n), n);
    padded.topRows(m.rows()) = m;
    Eigen::BDCSVD<Matrix> svd(padded, Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    const double threshold = rel_tol * std::max(sigma_max, 1.0);
    std::vector<Eigen::Index> picked;
    for (Eigen::Index k = n - 1; k >= 0; --k) {
        // columns beyond the number of singular values belong to the kernel outright
        if (k >= sv.size() || sv(k) <= threshold) {
            picked.push_back(k);
        }
    }
    Matrix out(n, Eigen::Index(picked.size()));
    for (std::size_t c = 0; c < picked.size(); ++c) {
        out.col(Eigen::Index(c)) = svd.matrixV().col(picked[c]);
    }
    return out;
}

}  // namespace

ComplexMatrix null_space(const ComplexMatrix &m, double rel_tol) { return null_space_impl(m, rel_tol); }

RealMatrix null_space(const RealMatrix &m, double rel_tol) { return null_space_impl(m, rel_tol); }

ComplexMatrix orthonormal_span(const ComplexMatrix &vectors, double tol) {
    if (vectors.cols() == 0) {
        return ComplexMatrix(vectors.rows(), 0);
    }
    Eigen::BDCSVD<ComplexMatrix> svd(vectors, Eigen::ComputeThinU);
    const auto &sv = svd.singularValues();
    Eigen::Index rank = 0;
    const double threshold = tol * std::max(sv(0), 1.0);
    while (rank < sv.size() && sv(rank) > threshold) {
        ++rank;
    }
    return svd.matrixU().leftCols(rank);
}

ComplexMatrix intersect_spans(const ComplexMatrix &a, const ComplexMatrix &b, double tol) {
    if (a.rows() != b.rows()) {
        throw DimensionMismatch("intersect_spans: ambient dimensions differ");
    }
    if (a.cols() == 0 || b.cols() == 0) {
        return ComplexMatrix(a.rows(), 0);
    }
    // a x = b y  <=>  [a, -b] (x; y) = 0
    ComplexMatrix stacked(a.rows(), a.cols() + b.cols());
    stacked << a, -b;
    const ComplexMatrix coeffs = null_space(stacked, tol);
    if (coeffs.cols() == 0) {
        return ComplexMatrix(a.rows(), 0);
    }
    const ComplexMatrix raw = a * coeffs.topRows(a.cols());
    return orthonormal_span(raw, tol);
}

namespace {

template <typename Matrix>
Matrix canonical_basis_impl(const Matrix &basis, double pivot_tol) {
    using Scalar = typename Matrix::Scalar;
    const Eigen::Index dim = basis.rows();
    const Eigen::Index k = basis.cols();
    // rows of `ech` are the basis vectors; reduce to echelon form
    Matrix ech = basis.transpose();
    Eigen::Index rank = 0;
    for (Eigen::Index c = 0; c < dim && rank < k; ++c) {
        Eigen::Index best = rank;
        for (Eigen::Index r = rank + 1; r < k; ++r) {
            if (std::abs(ech(r, c)) > std::abs(ech(best, c))) {
                best = r;
            }
        }
        if (std::abs(ech(best, c)) <= pivot_tol) {
            continue;
        }
        ech.row(rank).swap(ech.row(best));
        const Scalar pivot = ech(rank, c);
        ech.row(rank) /= pivot;
        for (Eigen::Index r = 0; r < k; ++r) {
            if (r != rank) {
                const Scalar factor = ech(r, c);
                ech.row(r) -= factor * ech.row(rank);
            }
        }
        ++rank;
    }
    Matrix out = ech.topRows(rank).transpose();
    for (Eigen::Index j = 0; j < rank; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index i = 0; i < j; ++i) {
                const Scalar overlap = out.col(i).dot(out.col(j));
                out.col(j) -= overlap * out.col(i);
            }
        }
        out.col(j).normalize();
    }
    return out;
}

}  // namespace

ComplexMatrix canonical_basis(const ComplexMatrix &basis, double pivot_tol) {
    return canonical_basis_impl(basis, pivot_tol);
}

RealMatrix canonical_basis(const RealMatrix &basis, double pivot_tol) {
    return canonical_basis_impl(basis, pivot_tol);
}

double projection_residual(const ComplexVector &v, const ComplexMatrix &basis) {
    const double norm = v.norm();
    if (norm == 0.0) {
        return 0.0;
    }
    if (basis.cols() == 0) {
        return 1.0;
    }
    const ComplexVector r = v - basis * (basis.adjoint() * v);
    return r.norm() / norm;
}

double span_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.cols() || a.rows() != b.rows()) {
        return 1.0;
    }
    double worst = 0.0;
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
        worst = std::max(worst, projection_residual(a.col(k), b));
    }
    for (Eigen::Index k = 0; k < b.cols(); ++k) {
        worst = std::max(worst, projection_residual(b.col(k), a));
    }
    return worst;
}

ComplexMatrix columns(const std::vector<ComplexVector> &vectors, Eigen::Index dim) {
    ComplexMatrix out(dim, Eigen::Index(vectors.size()));
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        if (vectors[k].size() != dim) {
            throw DimensionMismatch("columns: vector length mismatch");
        }
        out.col(Eigen::Index(k)) = vectors[k];
    }
    return out;
}

std::vector<ComplexVector> column_list(const ComplexMatrix &m) {
    std::vector<ComplexVector> out;
    out.reserve(std::size_t(m.cols()));
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
        out.emplace_back(m.col(k));
    }
    return out;
}

}  // namespace qdeconv
