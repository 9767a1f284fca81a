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

#include "qdeconv/random_unitary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace qdeconv {

namespace {

void require_unitary(const ComplexMatrix &u, double tol, const std::string &what) {
    if (!is_square(u)) {
        throw DimensionMismatch(what + " is not square");
    }
    const double residual = unitarity_residual(u);
    if (residual > tol) {
        throw NonUnitary(what + " is not unitary: ||U^dagger U - I||_F = " +
                         std::to_string(residual));
    }
}

struct Schur {
    std::vector<Complex> values;
    ComplexMatrix vectors;
};

Schur schur_eigensystem(const ComplexMatrix &u) {
    Eigen::ComplexSchur<ComplexMatrix> schur(u);
    Schur out;
    out.vectors = schur.matrixU();
    const ComplexMatrix &t = schur.matrixT();
    for (Eigen::Index k = 0; k < t.rows(); ++k) {
        out.values.push_back(t(k, k));
    }
    return out;
}

void fix_phase(ComplexVector &v) {
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < v.size(); ++k) {
        // strictly larger (beyond rounding) wins, so ties go to the lowest index
        if (std::abs(v(k)) > std::abs(v(best)) + 1e-12) {
            best = k;
        }
    }
    const double mag = std::abs(v(best));
    if (mag > 0.0) {
        v *= std::conj(v(best)) / mag;
    }
}

}  // namespace

UnitaryErrorSet::UnitaryErrorSet(std::vector<ComplexMatrix> unitaries, std::size_t guess_index,
                                 double tol)
    : unitaries_(std::move(unitaries)), guess_index_(guess_index) {
    if (unitaries_.empty()) {
        throw Error("UnitaryErrorSet: no unitaries");
    }
    if (guess_index_ >= unitaries_.size()) {
        throw Error("UnitaryErrorSet: guess index " + std::to_string(guess_index_) +
                    " out of range");
    }
    dim_ = int(unitaries_.front().rows());
    for (std::size_t k = 0; k < unitaries_.size(); ++k) {
        if (unitaries_[k].rows() != dim_ || unitaries_[k].cols() != dim_) {
            throw DimensionMismatch("UnitaryErrorSet: unitary " + std::to_string(k) +
                                    " has the wrong shape");
        }
        require_unitary(unitaries_[k], tol, "unitary " + std::to_string(k));
    }
}

UnitaryErrorSet UnitaryErrorSet::with_guess(std::size_t guess_index) const {
    return UnitaryErrorSet(unitaries_, guess_index);
}

EigGrouping group_eigenvalues(const ComplexMatrix &u, double group_tol) {
    const Schur sys = schur_eigensystem(u);
    const std::size_t n = sys.values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::arg(sys.values[a]) < std::arg(sys.values[b]);
    });

    EigGrouping g;
    for (std::size_t k : order) {
        g.eigenvalues.push_back(sys.values[k]);
        ComplexVector v = sys.vectors.col(Eigen::Index(k));
        fix_phase(v);
        g.eigenvectors.push_back(std::move(v));
    }
    // single-linkage clustering; phases near +-pi can sit at opposite ends of the ordering
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (std::abs(g.eigenvalues[a] - g.eigenvalues[b]) <= group_tol) {
                parent[find(b)] = find(a);
            }
        }
    }
    std::vector<std::size_t> root_slot(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t r = find(k);
        if (root_slot[r] == n) {
            root_slot[r] = g.groups.size();
            g.groups.emplace_back();
        }
        g.groups[root_slot[r]].push_back(k);
    }
    return g;
}

ComplexMatrix gamma_i(const UnitaryErrorSet &es, std::size_t i) {
    if (i >= es.size()) {
        throw Error("gamma_i: index " + std::to_string(i) + " out of range");
    }
    const ComplexMatrix w = es.unitaries()[i].adjoint() * es.guess();
    return kron(w, w.conjugate());
}

std::vector<ComplexVector> invariant_subspace(const ComplexMatrix &g, double tol) {
    if (!is_square(g)) {
        throw DimensionMismatch("invariant_subspace: operator is not square");
    }
    const Schur sys = schur_eigensystem(g);
    std::vector<ComplexVector> picked;
    for (std::size_t k = 0; k < sys.values.size(); ++k) {
        if (std::abs(sys.values[k] - Complex(1.0)) <= tol) {
            picked.emplace_back(sys.vectors.col(Eigen::Index(k)));
        }
    }
    if (picked.empty()) {
        return {};
    }
    const ComplexMatrix span = orthonormal_span(columns(picked, g.rows()), tol);
    return column_list(canonical_basis(span));
}

ObservableFamily ru_correctable_family(const UnitaryErrorSet &es, double tol) {
    const int d = es.dim();
    const Eigen::Index n = Eigen::Index(d) * d;
    ComplexMatrix span = ComplexMatrix::Identity(n, n);
    for (std::size_t i = 0; i < es.size(); ++i) {
        if (i == es.guess_index()) {
            continue;
        }
        const auto s_i = invariant_subspace(gamma_i(es, i), tol);
        span = intersect_spans(span, columns(s_i, n), tol);
        if (span.cols() == 0) {
            break;
        }
    }
    return hermitian_section(column_list(canonical_basis(span)), d, tol);
}

std::pair<EigGrouping, ObservableFamily> two_unitary_family(const ComplexMatrix &u1,
                                                            const ComplexMatrix &u2,
                                                            const Tolerances &tol) {
    if (u1.rows() != u2.rows() || u1.cols() != u2.cols()) {
        throw DimensionMismatch("two_unitary_family: U1 and U2 differ in shape");
    }
    require_unitary(u1, tol.tol, "U1");
    require_unitary(u2, tol.tol, "U2");
    const int d = int(u1.rows());
    const ComplexMatrix w = u1.adjoint() * u2;
    EigGrouping grouping = group_eigenvalues(w, tol.eig_group_tol);

    std::vector<ComplexMatrix> members;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const auto &group : grouping.groups) {
        // orthonormalize inside the class; Schur vectors of a degenerate class are orthonormal
        // already but this keeps the family exact under rounding
        std::vector<ComplexVector> raw;
        for (std::size_t idx : group) {
            raw.push_back(grouping.eigenvectors[idx]);
        }
        const ComplexMatrix q = orthonormal_span(columns(raw, d), 1e-10);
        for (Eigen::Index a = 0; a < q.cols(); ++a) {
            members.push_back(q.col(a) * q.col(a).adjoint());
            for (Eigen::Index b = a + 1; b < q.cols(); ++b) {
                const ComplexMatrix ab = q.col(a) * q.col(b).adjoint();
                members.push_back(inv_sqrt2 * (ab + ab.adjoint()));
                members.push_back(inv_sqrt2 * Complex(0.0, 1.0) * (ab.adjoint() - ab));
            }
        }
    }
    ObservableFamily fam;
    fam.dim = d;
    fam.basis = std::move(members);
    return {std::move(grouping), std::move(fam)};
}

ObservableFamily commutant_family(const std::vector<ComplexMatrix> &us, double tol) {
    if (us.empty()) {
        throw Error("commutant_family: no operators");
    }
    const int d = int(us.front().rows());
    const Eigen::Index n = Eigen::Index(d) * d;
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    ComplexMatrix stacked(n * Eigen::Index(us.size()), n);
    for (std::size_t k = 0; k < us.size(); ++k) {
        if (us[k].rows() != d || us[k].cols() != d) {
            throw DimensionMismatch("commutant_family: operator shapes differ");
        }
        require_unitary(us[k], Tolerances{}.tol, "operator " + std::to_string(k));
        // vec(U A - A U) = (U (x) I - I (x) U^T) vec(A)
        stacked.middleRows(Eigen::Index(k) * n, n) = kron(us[k], id) - kron(id, us[k].transpose());
    }
    const ComplexMatrix ker = null_space(stacked, tol);
    return hermitian_section(column_list(canonical_basis(ker)), d, tol);
}

}  // namespace qdeconv
