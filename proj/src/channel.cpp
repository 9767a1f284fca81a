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

#include "qdeconv/channel.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace qdeconv {

namespace {

int checked_dim(const std::vector<ComplexMatrix> &kraus) {
    if (kraus.empty()) {
        throw CptpViolation("Kraus list is empty");
    }
    const Eigen::Index d = kraus.front().rows();
    if (d <= 0 || d > kMaxDim) {
        throw DimensionMismatch("channel dimension " + std::to_string(d) + " outside [1, " +
                                std::to_string(kMaxDim) + "]");
    }
    for (const auto &a : kraus) {
        if (a.rows() != d || a.cols() != d) {
            throw DimensionMismatch("Kraus operators must all be " + std::to_string(d) + "x" +
                                    std::to_string(d));
        }
    }
    return int(d);
}

void require_square_gamma(int d, const ComplexMatrix &m, const char *what) {
    if (d <= 0 || d > kMaxDim || m.rows() != Eigen::Index(d) * d || m.cols() != m.rows()) {
        throw DimensionMismatch(std::string(what) + ": expected a " + std::to_string(d * d) + "x" +
                                std::to_string(d * d) + " matrix");
    }
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus, NoCheck)
    : dim_(checked_dim(kraus)), kraus_(std::move(kraus)) {}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus, double tol)
    : KrausChannel(std::move(kraus), NoCheck{}) {
    const double residual = trace_preservation_residual();
    if (residual > tol) {
        std::ostringstream msg;
        msg << "Kraus operators are not trace preserving: residual ||sum A^dagger A - I||_F = " << residual
            << " > " << tol;
        throw CptpViolation(msg.str());
    }
}

KrausChannel KrausChannel::unchecked(std::vector<ComplexMatrix> kraus) {
    return KrausChannel(std::move(kraus), NoCheck{});
}

double KrausChannel::trace_preservation_residual() const {
    ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
    for (const auto &a : kraus_) {
        sum += a.adjoint() * a;
    }
    return (sum - ComplexMatrix::Identity(dim_, dim_)).norm();
}

TransferMatrix::TransferMatrix(int d, ComplexMatrix g) : dim(d), gamma(std::move(g)) {
    require_square_gamma(dim, gamma, "TransferMatrix");
}

TransferMatrix TransferMatrix::identity(int d) {
    return TransferMatrix(d, ComplexMatrix::Identity(d * d, d * d));
}

ChoiMatrix::ChoiMatrix(int d, ComplexMatrix c) : dim(d), choi(std::move(c)) {
    require_square_gamma(dim, choi, "ChoiMatrix");
}

ProbVector::ProbVector(std::vector<double> probs, double tol) : probs_(std::move(probs)) {
    if (probs_.empty()) {
        throw InvalidProbability("probability vector is empty");
    }
    for (double p : probs_) {
        if (!std::isfinite(p) || p < -tol || p > 1.0 + tol) {
            throw InvalidProbability("probability " + std::to_string(p) + " outside [0, 1]");
        }
    }
    const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    if (std::abs(total - 1.0) > tol) {
        throw InvalidProbability("probabilities sum to " + std::to_string(total));
    }
}

TransferMatrix transfer_from_kraus(const KrausChannel &ch) {
    const int d = ch.dim();
    ComplexMatrix gamma = ComplexMatrix::Zero(d * d, d * d);
    for (const auto &a : ch.kraus()) {
        gamma += kron(a, a.conjugate());
    }
    return TransferMatrix(d, std::move(gamma));
}

ChoiMatrix choi_from_channel(const KrausChannel &ch) {
    const int d = ch.dim();
    ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
    ComplexMatrix unit = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            unit.setZero();
            unit(i, j) = 1.0;
            ComplexMatrix image = ComplexMatrix::Zero(d, d);
            for (const auto &a : ch.kraus()) {
                image += a * unit * a.adjoint();
            }
            choi += kron(image, unit);
        }
    }
    return ChoiMatrix(d, choi / double(d));
}

ChoiMatrix choi_from_transfer(const TransferMatrix &t) {
    const int d = t.dim;
    ComplexMatrix choi(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    choi(i * d + k, j * d + l) = t.gamma(i * d + j, k * d + l) / double(d);
                }
            }
        }
    }
    return ChoiMatrix(d, std::move(choi));
}

TransferMatrix reshuffle(const ChoiMatrix &c) {
    const int d = c.dim;
    ComplexMatrix gamma(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    gamma(i * d + j, k * d + l) = double(d) * c.choi(i * d + k, j * d + l);
                }
            }
        }
    }
    return TransferMatrix(d, std::move(gamma));
}

TransferMatrix adjoint_transfer(const TransferMatrix &t) {
    return TransferMatrix(t.dim, t.gamma.adjoint());
}

double conditioning(const TransferMatrix &t) {
    Eigen::BDCSVD<ComplexMatrix> svd(t.gamma);
    const auto &sv = svd.singularValues();
    if (sv(0) == 0.0) {
        return 0.0;
    }
    return sv(sv.size() - 1) / sv(0);
}

TransferMatrix inverse_transfer(const TransferMatrix &t, double cutoff) {
    const double ratio = conditioning(t);
    if (ratio <= cutoff) {
        std::ostringstream msg;
        msg << "channel is not invertible: sigma_min/sigma_max = " << ratio << " <= " << cutoff;
        throw SingularChannel(msg.str());
    }
    return TransferMatrix(t.dim, t.gamma.fullPivLu().inverse());
}

ComplexMatrix apply_channel(const TransferMatrix &t, const ComplexMatrix &rho) {
    if (rho.rows() != t.dim || rho.cols() != t.dim) {
        throw DimensionMismatch("apply_channel: state is " + std::to_string(rho.rows()) + "x" +
                                std::to_string(rho.cols()) + ", channel acts on d = " +
                                std::to_string(t.dim));
    }
    return devectorize(t.gamma * vectorize(rho), t.dim);
}

TransferMatrix compose(const TransferMatrix &t1, const TransferMatrix &t2) {
    if (t1.dim != t2.dim) {
        throw DimensionMismatch("compose: dimensions " + std::to_string(t1.dim) + " and " +
                                std::to_string(t2.dim) + " differ");
    }
    return TransferMatrix(t1.dim, t1.gamma * t2.gamma);
}

KrausChannel unitary_channel(const ComplexMatrix &u, double tol) {
    if (!is_square(u)) {
        throw DimensionMismatch("unitary_channel: matrix is not square");
    }
    const double residual = unitarity_residual(u);
    if (residual > tol) {
        throw NonUnitary("matrix is not unitary: ||U^dagger U - I||_F = " +
                         std::to_string(residual));
    }
    return KrausChannel({u}, tol);
}

KrausChannel random_unitary_channel(const ProbVector &ps, std::span<const ComplexMatrix> us,
                                    double tol) {
    if (ps.size() != us.size()) {
        throw InvalidProbability("got " + std::to_string(ps.size()) + " probabilities for " +
                                 std::to_string(us.size()) + " unitaries");
    }
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(us.size());
    for (std::size_t k = 0; k < us.size(); ++k) {
        if (!is_square(us[k])) {
            throw DimensionMismatch("random_unitary_channel: unitary " + std::to_string(k) +
                                    " is not square");
        }
        const double residual = unitarity_residual(us[k]);
        if (residual > tol) {
            throw NonUnitary("unitary " + std::to_string(k) +
                             " fails ||U^dagger U - I||_F = " + std::to_string(residual));
        }
        kraus.push_back(std::sqrt(std::max(ps[k], 0.0)) * us[k]);
    }
    return KrausChannel(std::move(kraus), tol);
}

KrausChannel convex_combination(const ProbVector &weights, std::span<const KrausChannel> parts) {
    if (weights.size() != parts.size() || parts.empty()) {
        throw InvalidProbability("convex_combination: weight count does not match components");
    }
    std::vector<ComplexMatrix> kraus;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (parts[k].dim() != parts[0].dim()) {
            throw DimensionMismatch("convex_combination: component dimensions differ");
        }
        const double s = std::sqrt(std::max(weights[k], 0.0));
        for (const auto &a : parts[k].kraus()) {
            kraus.push_back(s * a);
        }
    }
    return KrausChannel(std::move(kraus));
}

TransferMatrix convex_combination(const ProbVector &weights,
                                  std::span<const TransferMatrix> parts) {
    if (weights.size() != parts.size() || parts.empty()) {
        throw InvalidProbability("convex_combination: weight count does not match components");
    }
    ComplexMatrix gamma = ComplexMatrix::Zero(parts[0].gamma.rows(), parts[0].gamma.cols());
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (parts[k].dim != parts[0].dim) {
            throw DimensionMismatch("convex_combination: component dimensions differ");
        }
        gamma += weights[k] * parts[k].gamma;
    }
    return TransferMatrix(parts[0].dim, std::move(gamma));
}

CptpReport is_cptp(const KrausChannel &ch, double tol) {
    CptpReport report;
    report.trace_residual = ch.trace_preservation_residual();
    report.trace_preserving = report.trace_residual <= tol;
    report.choi_min_eigenvalue = min_eigenvalue(choi_from_channel(ch).choi);
    report.completely_positive = report.choi_min_eigenvalue >= -tol;
    return report;
}

CptpReport is_cptp(const TransferMatrix &t, double tol) {
    const int d = t.dim;
    // trace preservation: <<I| gamma = <<I|
    const ComplexVector id = vectorize(ComplexMatrix::Identity(d, d));
    CptpReport report;
    report.trace_residual = (t.gamma.adjoint() * id - id).norm();
    report.trace_preserving = report.trace_residual <= tol;
    const ChoiMatrix c = choi_from_transfer(t);
    report.choi_min_eigenvalue = min_eigenvalue(c.choi);
    // a map that is not Hermiticity preserving has a non-Hermitian Choi matrix
    report.completely_positive =
        hermiticity_residual(c.choi) <= tol && report.choi_min_eigenvalue >= -tol;
    return report;
}

}  // namespace qdeconv
