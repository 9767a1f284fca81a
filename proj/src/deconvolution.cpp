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

#include "qdeconv/deconvolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

namespace qdeconv {

namespace {

// Hermitian d x d matrices <-> R^(2 d^2) via (Re vec, Im vec). The Euclidean inner product
// there is Re Tr(X^dagger Y), which is the HS inner product on Hermitian matrices.
RealVector to_real(const ComplexMatrix &a) {
    const ComplexVector v = vectorize(a);
    RealVector out(2 * v.size());
    out << v.real(), v.imag();
    return out;
}

ComplexMatrix from_real(const RealVector &x, int d) {
    const Eigen::Index n = Eigen::Index(d) * d;
    ComplexVector v(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        v(k) = Complex(x(k), x(n + k));
    }
    const ComplexMatrix a = devectorize(v, d);
    return 0.5 * (a + a.adjoint());
}

// Orthonormal, span-canonical Hermitian basis for the real span of `mats`.
std::vector<ComplexMatrix> hermitian_basis(const std::vector<ComplexMatrix> &mats, int d,
                                           double tol) {
    if (mats.empty()) {
        return {};
    }
    RealMatrix stacked(2 * Eigen::Index(d) * d, Eigen::Index(mats.size()));
    for (std::size_t k = 0; k < mats.size(); ++k) {
        stacked.col(Eigen::Index(k)) = to_real(mats[k]);
    }
    Eigen::BDCSVD<RealMatrix> svd(stacked, Eigen::ComputeThinU);
    const auto &sv = svd.singularValues();
    Eigen::Index rank = 0;
    const double threshold = tol * std::max(sv(0), 1.0);
    while (rank < sv.size() && sv(rank) > threshold) {
        ++rank;
    }
    const RealMatrix canon = canonical_basis(RealMatrix(svd.matrixU().leftCols(rank)));
    std::vector<ComplexMatrix> out;
    out.reserve(std::size_t(canon.cols()));
    for (Eigen::Index k = 0; k < canon.cols(); ++k) {
        out.push_back(from_real(canon.col(k), d));
    }
    return out;
}

// Index map of A -> A^T on row-major vectorizations.
std::vector<Eigen::Index> transpose_permutation(int d) {
    std::vector<Eigen::Index> perm(std::size_t(d) * std::size_t(d));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            perm[std::size_t(i) * d + j] = Eigen::Index(j) * d + i;
        }
    }
    return perm;
}

struct PreparedFamily {
    std::vector<ComplexMatrix> members;
    std::vector<ComplexMatrix> modified;
};

double max_delta_over_states(const GuessPair &gp, const PreparedFamily &prep, int n_states,
                             std::uint64_t seed) {
    const int d = gp.dim();
    Rng rng = derive_rng(seed, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    double worst = 0.0;
    for (int s = 0; s < n_states; ++s) {
        const ComplexMatrix rho = random_density_matrix(d, rng);
        const ComplexMatrix noisy = apply_channel(gp.phi(), rho);
        ComplexMatrix combo = ComplexMatrix::Zero(d, d);
        ComplexMatrix combo_mod = ComplexMatrix::Zero(d, d);
        for (std::size_t k = 0; k < prep.members.size(); ++k) {
            const double ideal = hs_inner(prep.members[k], rho).real();
            const double nd = hs_inner(prep.modified[k], noisy).real();
            worst = std::max(worst, std::abs(ideal - nd));
            const double c = normal(rng);
            combo += c * prep.members[k];
            combo_mod += c * prep.modified[k];
        }
        if (!prep.members.empty()) {
            const double scale = std::max(combo.norm(), 1e-300);
            const double ideal = hs_inner(combo, rho).real() / scale;
            const double nd = hs_inner(combo_mod, noisy).real() / scale;
            worst = std::max(worst, std::abs(ideal - nd));
        }
    }
    return worst;
}

PreparedFamily prepare(const GuessPair &gp, const ObservableFamily &fam) {
    PreparedFamily prep;
    prep.members = fam.basis;
    prep.modified.reserve(fam.basis.size());
    for (const auto &b : fam.basis) {
        prep.modified.push_back(modified_observable(gp, b));
    }
    return prep;
}

void require_verified(double max_delta, double threshold, const char *what) {
    if (!(max_delta <= threshold)) {
        std::ostringstream msg;
        msg << what << ": self-verification failed, max Delta_ND = " << max_delta << " > "
            << threshold;
        throw VerificationFailed(msg.str());
    }
}

}  // namespace

GuessPair::GuessPair(TransferMatrix phi, TransferMatrix phi_g, double cutoff)
    : phi_(std::move(phi)), phi_g_(std::move(phi_g)) {
    if (phi_.dim != phi_g_.dim) {
        throw DimensionMismatch("GuessPair: true channel has d = " + std::to_string(phi_.dim) +
                                ", guess has d = " + std::to_string(phi_g_.dim));
    }
    phi_g_inv_ = inverse_transfer(phi_g_, cutoff);
    const auto n = phi_g_.gamma.rows();
    const double residual =
        (phi_g_.gamma * phi_g_inv_.gamma - ComplexMatrix::Identity(n, n)).norm();
    if (residual > 1e-10) {
        throw SingularChannel("guess inverse is numerically unreliable: residual " +
                              std::to_string(residual));
    }
}

std::vector<double> ParametricChannel::probe_values(int n_probes) const {
    if (!probes.empty()) {
        return probes;
    }
    std::vector<double> out;
    out.reserve(std::size_t(std::max(n_probes, 0)));
    for (int k = 1; k <= n_probes; ++k) {
        out.push_back(lo + (hi - lo) * double(k) / double(n_probes + 1));
    }
    return out;
}

ComplexMatrix deviation_operator(const GuessPair &gp) {
    const auto n = gp.phi().gamma.rows();
    return ComplexMatrix::Identity(n, n) - gp.phi().gamma.adjoint() * gp.phi_g_inv().gamma.adjoint();
}

std::vector<ComplexVector> kernel(const ComplexMatrix &f, double rel_tol) {
    if (f.rows() != f.cols()) {
        throw DimensionMismatch("kernel: operator is not square");
    }
    return column_list(canonical_basis(null_space(f, rel_tol)));
}

ObservableFamily hermitian_section(const std::vector<ComplexVector> &kernel_basis, int d,
                                   double tol) {
    ObservableFamily fam;
    fam.dim = d;
    if (kernel_basis.empty()) {
        return fam;
    }
    const Eigen::Index n = Eigen::Index(d) * d;
    const ComplexMatrix k = orthonormal_span(columns(kernel_basis, n), tol);
    const Eigen::Index m = k.cols();
    if (m == 0) {
        return fam;
    }
    // Elements K (x + i y) with x, y real. Anti-Hermitian part as a real linear map of (x; y):
    // vec(A) - vec(A^dagger) = K (x + i y) - P conj(K) (x - i y), P the transpose permutation.
    const auto perm = transpose_permutation(d);
    const RealMatrix kr = k.real();
    const RealMatrix ki = k.imag();
    RealMatrix qr(n, m);
    RealMatrix qi(n, m);
    for (Eigen::Index r = 0; r < n; ++r) {
        qr.row(perm[std::size_t(r)]) = kr.row(r);
        qi.row(perm[std::size_t(r)]) = -ki.row(r);
    }
    RealMatrix l(2 * n, 2 * m);
    l.topLeftCorner(n, m) = kr - qr;
    l.topRightCorner(n, m) = -ki - qi;
    l.bottomLeftCorner(n, m) = ki - qi;
    l.bottomRightCorner(n, m) = kr + qr;
    const RealMatrix coeffs = null_space(l, tol);

    std::vector<ComplexMatrix> hermitian;
    hermitian.reserve(std::size_t(coeffs.cols()));
    for (Eigen::Index c = 0; c < coeffs.cols(); ++c) {
        const ComplexVector z = coeffs.col(c).head(m).cast<Complex>() +
                                Complex(0.0, 1.0) * coeffs.col(c).tail(m).cast<Complex>();
        const ComplexMatrix a = devectorize(k * z, d);
        hermitian.push_back(0.5 * (a + a.adjoint()));
    }
    fam.basis = hermitian_basis(hermitian, d, tol);
    return fam;
}

ComplexMatrix modified_observable(const GuessPair &gp, const ComplexMatrix &a) {
    if (a.rows() != gp.dim() || a.cols() != gp.dim()) {
        throw DimensionMismatch("modified_observable: observable does not match d = " +
                                std::to_string(gp.dim()));
    }
    return devectorize(gp.phi_g_inv().gamma.adjoint() * vectorize(a), gp.dim());
}

double expectation(const ComplexMatrix &a, const ComplexMatrix &rho) {
    if (a.rows() != rho.rows() || a.cols() != rho.cols() || !is_square(a)) {
        throw DimensionMismatch("expectation: observable and state shapes differ");
    }
    const Complex value = (a * rho).trace();
    const double scale = std::max(1.0, a.norm() * rho.norm());
    if (std::abs(value.imag()) > 1e-10 * scale) {
        throw InvalidState("expectation value has imaginary part " +
                           std::to_string(value.imag()) + "; observable or state not Hermitian");
    }
    return value.real();
}

Complex deviation_bilinear(const GuessPair &gp, const ComplexMatrix &a, const ComplexMatrix &rho) {
    // <<rho|X>> = Tr(rho^dagger X)
    return vectorize(rho).dot(deviation_operator(gp) * vectorize(a));
}

DeconvReport evaluate(const GuessPair &gp, const ComplexMatrix &a, const ComplexMatrix &rho) {
    DeconvReport r;
    const ComplexMatrix noisy = apply_channel(gp.phi(), rho);
    r.ideal = expectation(a, rho);
    r.experimental = expectation(a, noisy);
    r.deconvolved = expectation(modified_observable(gp, a), noisy);
    r.delta_exp = std::abs(r.ideal - r.experimental);
    r.delta_nd = std::abs(r.ideal - r.deconvolved);
    r.tie = std::abs(r.delta_nd - r.delta_exp) <= 1e-12;
    r.improved = !r.tie && r.delta_nd < r.delta_exp;
    return r;
}

double verify_family(const GuessPair &gp, const ObservableFamily &fam, int n_states,
                     std::uint64_t seed) {
    if (fam.dim != gp.dim()) {
        throw DimensionMismatch("verify_family: family and channel dimensions differ");
    }
    return max_delta_over_states(gp, prepare(gp, fam), n_states, seed);
}

ObservableFamily correctable_family(const GuessPair &gp, const FamilyOptions &opts) {
    ObservableFamily fam =
        hermitian_section(kernel(deviation_operator(gp), opts.kernel_rel_tol), gp.dim(),
                          opts.hermitian_tol);
    fam.verified_max_delta = verify_family(gp, fam, opts.verify_states, opts.seed);
    require_verified(fam.verified_max_delta, opts.verify_threshold, "correctable_family");
    return fam;
}

namespace {

ObservableFamily intersect_family(const std::vector<TransferMatrix> &phis,
                                  const TransferMatrix &guess, const FamilyOptions &opts) {
    ComplexMatrix span;
    for (std::size_t k = 0; k < phis.size(); ++k) {
        const GuessPair gp(phis[k], guess);
        const ComplexMatrix ker = null_space(deviation_operator(gp), opts.kernel_rel_tol);
        span = k == 0 ? ker : intersect_spans(span, ker, opts.kernel_rel_tol);
    }
    return hermitian_section(column_list(canonical_basis(span)), guess.dim, opts.hermitian_tol);
}

double verify_over(const std::vector<TransferMatrix> &phis, const TransferMatrix &guess,
                   const ObservableFamily &fam, const FamilyOptions &opts) {
    double worst = 0.0;
    for (std::size_t k = 0; k < phis.size(); ++k) {
        const GuessPair gp(phis[k], guess);
        worst = std::max(worst, verify_family(gp, fam, opts.verify_states, opts.seed + k));
    }
    return worst;
}

}  // namespace

ObservableFamily correctable_family(const ParametricChannel &phi, const TransferMatrix &guess,
                                    const FamilyOptions &opts) {
    const auto probes = phi.probe_values(opts.n_probes);
    if (probes.empty()) {
        throw Error("correctable_family: no parameter probes");
    }
    std::vector<TransferMatrix> channels;
    for (double x : probes) {
        channels.push_back(phi.at(x));
    }
    ObservableFamily fam = intersect_family(channels, guess, opts);
    fam.probes = probes;

    Rng rng = derive_rng(opts.seed, 1);
    std::uniform_real_distribution<double> uniform(phi.lo, phi.hi);
    for (int k = 0; k < opts.n_spot_checks; ++k) {
        channels.push_back(phi.at(uniform(rng)));
    }
    fam.verified_max_delta = verify_over(channels, guess, fam, opts);
    require_verified(fam.verified_max_delta, opts.verify_threshold, "correctable_family");
    return fam;
}

ObservableFamily correctable_family(const std::vector<TransferMatrix> &phis,
                                    const TransferMatrix &guess, const FamilyOptions &opts) {
    if (phis.empty()) {
        throw Error("correctable_family: no candidate true channels");
    }
    ObservableFamily fam = intersect_family(phis, guess, opts);
    fam.verified_max_delta = verify_over(phis, guess, fam, opts);
    require_verified(fam.verified_max_delta, opts.verify_threshold, "correctable_family");
    return fam;
}

double membership_residual(const ComplexMatrix &a, const ObservableFamily &fam) {
    const double norm = a.norm();
    if (norm == 0.0) {
        return 0.0;
    }
    ComplexMatrix r = a;
    for (const auto &b : fam.basis) {
        r -= hs_inner(b, a).real() * b;
    }
    return r.norm() / norm;
}

double family_distance(const ObservableFamily &a, const ObservableFamily &b) {
    if (a.dim != b.dim || a.n_params() != b.n_params()) {
        return 1.0;
    }
    double worst = 0.0;
    for (const auto &m : a.basis) {
        worst = std::max(worst, membership_residual(m, b));
    }
    for (const auto &m : b.basis) {
        worst = std::max(worst, membership_residual(m, a));
    }
    return worst;
}

double family_distance(const ObservableFamily &a, const std::vector<ComplexMatrix> &spanning) {
    ObservableFamily other;
    other.dim = a.dim;
    other.basis = hermitian_basis(spanning, a.dim, 1e-10);
    return family_distance(a, other);
}

std::vector<SweepEntry> guess_sweep(const TransferMatrix &phi,
                                    const std::vector<TransferMatrix> &candidates,
                                    const FamilyOptions &opts) {
    std::vector<SweepEntry> out;
    out.reserve(candidates.size());
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        SweepEntry entry{k, -1};
        try {
            const GuessPair gp(phi, candidates[k]);
            entry.n_params = correctable_family(gp, opts).n_params();
        } catch (const SingularChannel &) {
            entry.n_params = -1;
        }
        out.push_back(entry);
    }
    std::stable_sort(out.begin(), out.end(), [](const SweepEntry &x, const SweepEntry &y) {
        return x.n_params > y.n_params;
    });
    return out;
}

}  // namespace qdeconv
