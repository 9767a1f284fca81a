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

#include "qdeconv/quorum.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace qdeconv {

QuorumBasis quorum_basis(int d) {
    if (d < 2 || d > kMaxDim) {
        throw DimensionMismatch("quorum_basis: d = " + std::to_string(d) + " outside [2, " +
                                std::to_string(kMaxDim) + "]");
    }
    QuorumBasis qb;
    qb.dim = d;
    qb.kind = QuorumKind::GellMann;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    qb.elements.push_back(ComplexMatrix::Identity(d, d) / std::sqrt(double(d)));
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            ComplexMatrix sym = ComplexMatrix::Zero(d, d);
            sym(j, k) = inv_sqrt2;
            sym(k, j) = inv_sqrt2;
            qb.elements.push_back(std::move(sym));
            ComplexMatrix anti = ComplexMatrix::Zero(d, d);
            anti(j, k) = Complex(0.0, -inv_sqrt2);
            anti(k, j) = Complex(0.0, inv_sqrt2);
            qb.elements.push_back(std::move(anti));
        }
    }
    for (int l = 1; l < d; ++l) {
        ComplexMatrix diag = ComplexMatrix::Zero(d, d);
        const double c = 1.0 / std::sqrt(double(l) * double(l + 1));
        for (int j = 0; j < l; ++j) {
            diag(j, j) = c;
        }
        diag(l, l) = -double(l) * c;
        qb.elements.push_back(std::move(diag));
    }
    qb.norms.assign(qb.elements.size(), 1.0);
    return qb;
}

QuorumBasis pauli_quorum(int d) {
    int n_qubits = 0;
    while ((1 << n_qubits) < d) {
        ++n_qubits;
    }
    if (d < 2 || (1 << n_qubits) != d || d > kMaxDim) {
        throw DimensionMismatch("pauli_quorum: d = " + std::to_string(d) +
                                " is not a power of two in [2, 64]");
    }
    const Complex i(0.0, 1.0);
    ComplexMatrix paulis[4] = {ComplexMatrix::Identity(2, 2), ComplexMatrix(2, 2),
                               ComplexMatrix(2, 2), ComplexMatrix(2, 2)};
    paulis[1] << 0.0, 1.0, 1.0, 0.0;
    paulis[2] << 0.0, -i, i, 0.0;
    paulis[3] << 1.0, 0.0, 0.0, -1.0;

    QuorumBasis qb;
    qb.dim = d;
    qb.kind = QuorumKind::PauliProduct;
    const int total = d * d;
    for (int code = 0; code < total; ++code) {
        ComplexMatrix m = ComplexMatrix::Identity(1, 1);
        for (int q = n_qubits - 1; q >= 0; --q) {
            m = kron(m, paulis[(code >> (2 * q)) & 3]);
        }
        qb.elements.push_back(m / std::sqrt(double(d)));
    }
    qb.norms.assign(qb.elements.size(), 1.0);
    return qb;
}

QuorumBasis make_quorum(int d, QuorumKind kind) {
    return kind == QuorumKind::PauliProduct ? pauli_quorum(d) : quorum_basis(d);
}

std::vector<double> decompose(const ComplexMatrix &a, const QuorumBasis &qb) {
    if (a.rows() != qb.dim || a.cols() != qb.dim) {
        throw DimensionMismatch("decompose: observable does not match quorum dimension " +
                                std::to_string(qb.dim));
    }
    std::vector<double> coeffs;
    coeffs.reserve(qb.elements.size());
    for (std::size_t m = 0; m < qb.elements.size(); ++m) {
        const Complex c = hs_inner(qb.elements[m], a) / qb.norms[m];
        if (std::abs(c.imag()) > 1e-10 * std::max(1.0, a.norm())) {
            throw InvalidState("decompose: observable is not Hermitian");
        }
        coeffs.push_back(c.real());
    }
    return coeffs;
}

ComplexMatrix reconstruct(const std::vector<double> &coeffs, const QuorumBasis &qb) {
    if (coeffs.size() != qb.elements.size()) {
        throw DimensionMismatch("reconstruct: coefficient count does not match quorum");
    }
    ComplexMatrix a = ComplexMatrix::Zero(qb.dim, qb.dim);
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
        a += coeffs[m] * qb.elements[m];
    }
    return a;
}

RealMatrix chi_matrix(const GuessPair &gp, const QuorumBasis &qb) {
    if (gp.dim() != qb.dim) {
        throw DimensionMismatch("chi_matrix: quorum and channel dimensions differ");
    }
    const auto n = Eigen::Index(qb.elements.size());
    RealMatrix chi(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
        const auto col = decompose(modified_observable(gp, qb.elements[std::size_t(m)]), qb);
        for (Eigen::Index r = 0; r < n; ++r) {
            chi(r, m) = col[std::size_t(r)];
        }
    }
    return chi;
}

ShotEstimate sample_expectation(const ComplexMatrix &rho, const ComplexMatrix &q,
                                std::int64_t shots, std::uint64_t seed) {
    if (rho.rows() != q.rows() || rho.cols() != q.cols() || !is_square(q)) {
        throw DimensionMismatch("sample_expectation: state and observable shapes differ");
    }
    if (shots < 0) {
        throw Error("sample_expectation: negative shot count");
    }
    ShotEstimate est;
    est.shots = shots;
    est.seed = seed;
    if (shots == 0) {
        est.mean = expectation(q, rho);
        return est;
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (q + q.adjoint()));
    const auto &values = es.eigenvalues();
    const ComplexMatrix &vecs = es.eigenvectors();
    std::vector<double> probs(std::size_t(values.size()));
    double total = 0.0;
    for (Eigen::Index j = 0; j < values.size(); ++j) {
        double p = vecs.col(j).dot(rho * vecs.col(j)).real();
        if (p < -1e-8) {
            throw InvalidState("Born probability " + std::to_string(p) +
                               " is negative; state is not positive semidefinite");
        }
        p = std::max(p, 0.0);
        probs[std::size_t(j)] = p;
        total += p;
    }
    if (total <= 0.0) {
        throw InvalidState("Born probabilities sum to zero");
    }
    for (auto &p : probs) {
        p /= total;
    }
    Rng rng(seed);
    std::discrete_distribution<std::size_t> outcome(probs.begin(), probs.end());
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::int64_t s = 0; s < shots; ++s) {
        const double v = values(Eigen::Index(outcome(rng)));
        sum += v;
        sum_sq += v * v;
    }
    const double n = double(shots);
    est.mean = sum / n;
    if (shots > 1) {
        const double var = std::max(0.0, (sum_sq - n * est.mean * est.mean) / (n - 1.0));
        est.std_error = std::sqrt(var / n);
    }
    return est;
}

ShotEstimate deconvolved_estimate(const GuessPair &gp, const ComplexMatrix &a,
                                  const ComplexMatrix &rho, const QuorumBasis &qb,
                                  std::int64_t shots_per_element, std::uint64_t seed) {
    if (!is_density_matrix(rho, 1e-8)) {
        throw InvalidState("deconvolved_estimate: input is not a density matrix");
    }
    const ComplexMatrix noisy = apply_channel(gp.phi(), rho);
    const auto coeffs = decompose(a, qb);
    const RealMatrix chi = chi_matrix(gp, qb);
    const auto n = Eigen::Index(qb.elements.size());
    // weight of <Q_n>: sum_m chi_{n,m} a_m
    const RealVector weights = chi * Eigen::Map<const RealVector>(coeffs.data(), n);

    ShotEstimate est;
    est.shots = shots_per_element;
    est.seed = seed;
    double var = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        if (weights(k) == 0.0) {
            continue;
        }
        // per-element stream, independent of evaluation order
        const std::uint64_t element_seed = derive_rng(seed, std::uint64_t(k))();
        const ShotEstimate e =
            sample_expectation(noisy, qb.elements[std::size_t(k)], shots_per_element, element_seed);
        est.mean += weights(k) * e.mean;
        var += weights(k) * weights(k) * e.std_error * e.std_error;
    }
    est.std_error = std::sqrt(var);
    return est;
}

}  // namespace qdeconv
