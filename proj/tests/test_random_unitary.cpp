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

#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "qdeconv/models.hpp"
#include "qdeconv/random_unitary.hpp"

namespace qdeconv {
namespace {

namespace m = models;

const Complex kI(0.0, 1.0);

TransferMatrix tm(const KrausChannel &ch) { return transfer_from_kraus(ch); }

// Eigenvalues from Eigen's general solver, sorted by phase.
std::vector<Complex> sorted_eigenvalues(const ComplexMatrix &u) {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(u);
    std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) { return std::arg(a) < std::arg(b); });
    return out;
}

double multiset_mismatch(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return 1e300;
    auto by_phase = [](Complex x, Complex y) { return std::arg(x) < std::arg(y); };
    std::sort(a.begin(), a.end(), by_phase);
    std::sort(b.begin(), b.end(), by_phase);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

// Hermitian A with U A = A U for all U, by brute force over Gell-Mann coordinates.
std::vector<ComplexMatrix> brute_commutant(const std::vector<ComplexMatrix> &us) {
    const int d = int(us.front().rows());
    std::vector<oracle::Kraus> phis;
    for (const auto &u : us) phis.push_back({u});
    // A commutes with U iff U^dagger A U = A: the correctable set with the identity guess
    return oracle::correctable(phis, {ComplexMatrix::Identity(d, d)}, d);
}

TEST(UnitaryErrorSet, Validates) {
    EXPECT_THROW(UnitaryErrorSet({}, 0), Error);
    EXPECT_THROW(UnitaryErrorSet({m::pauli(1)}, 1), Error);
    EXPECT_THROW(UnitaryErrorSet({2.0 * m::pauli(1)}, 0), NonUnitary);
    const UnitaryErrorSet es(m::pauli_set(), 2);
    EXPECT_EQ(es.with_guess(3).guess_index(), 3u);
    EXPECT_EQ(es.guess(), m::pauli(2));
}

TEST(GammaI, GuessIndexGivesIdentity) {
    const UnitaryErrorSet es(m::three_qutrit_unitaries(), 0);
    EXPECT_LE((gamma_i(es, 0) - ComplexMatrix::Identity(9, 9)).norm(), 1e-12);
    EXPECT_THROW(gamma_i(es, 3), Error);
}

TEST(GammaI, ThreeQutritEigenvalues) {
    const auto us = m::three_qutrit_unitaries();
    EXPECT_LE(multiset_mismatch(sorted_eigenvalues(us[1].adjoint() * us[0]), m::three_qutrit_s2_eigenvalues()),
              1e-10);
    EXPECT_LE(multiset_mismatch(sorted_eigenvalues(us[2].adjoint() * us[0]), m::three_qutrit_s3_eigenvalues()),
              1e-10);
    EXPECT_LE(multiset_mismatch(group_eigenvalues(us[1].adjoint() * us[0]).eigenvalues,
                                m::three_qutrit_s2_eigenvalues()),
              1e-10);
}

TEST(GammaI, TensorFormAndUnitarity) {
    Rng rng = derive_rng(51, 0);
    for (int d : {2, 3, 4}) {
        std::vector<ComplexMatrix> us;
        for (int k = 0; k < 3; ++k) us.push_back(random_unitary(d, rng));
        const UnitaryErrorSet es(us, 1);
        for (std::size_t i = 0; i < us.size(); ++i) {
            const ComplexMatrix w = us[i].adjoint() * us[1];
            const ComplexMatrix g = gamma_i(es, i);
            EXPECT_LE((g - oracle::kron(w, w.conjugate())).norm(), 1e-12);
            EXPECT_LE((g.adjoint() * g - ComplexMatrix::Identity(d * d, d * d)).norm(), 1e-10);
        }
    }
}

TEST(InvariantSubspace, IdentityAndNullSpaceCrossCheck) {
    EXPECT_EQ(invariant_subspace(ComplexMatrix::Identity(4, 4)).size(), 4u);
    Rng rng = derive_rng(52, 0);
    for (int d : {2, 3}) {
        const UnitaryErrorSet es({random_unitary(d, rng), random_unitary(d, rng)}, 0);
        const ComplexMatrix g = gamma_i(es, 1);
        const auto inv = invariant_subspace(g);
        // SVD null space of G - I as the oracle
        Eigen::JacobiSVD<ComplexMatrix> svd(g - ComplexMatrix::Identity(d * d, d * d), Eigen::ComputeFullV);
        int nul = 0;
        for (int k = 0; k < d * d; ++k) nul += svd.singularValues()(k) < 1e-8;
        ASSERT_EQ(int(inv.size()), nul);
        const ComplexMatrix ref = svd.matrixV().rightCols(nul);
        EXPECT_LE(span_distance(columns(inv, d * d), ref), 1e-9);
        for (const auto &v : inv) EXPECT_LE((g * v - v).norm(), 1e-9);
    }
}

TEST(InvariantSubspace, ThreeQutritListedSpans) {
    const UnitaryErrorSet es(m::three_qutrit_unitaries(), 0);
    const auto s2 = invariant_subspace(gamma_i(es, 1));
    const auto s3 = invariant_subspace(gamma_i(es, 2));
    ASSERT_EQ(s2.size(), 5u);
    ASSERT_EQ(s3.size(), 5u);
    const ComplexMatrix b2 = columns(s2, 9);
    const ComplexMatrix b3 = columns(s3, 9);
    for (const auto &v : m::three_qutrit_s2_span()) EXPECT_LE(projection_residual(v, b2), 1e-9);
    for (const auto &v : m::three_qutrit_s3_span()) EXPECT_LE(projection_residual(v, b3), 1e-9);
    EXPECT_EQ(oracle::rank(columns(m::three_qutrit_s2_span(), 9)), 5);
    EXPECT_EQ(oracle::rank(columns(m::three_qutrit_s3_span(), 9)), 5);
}

TEST(RuFamily, ThreeQutritUnitaries) {
    const auto us = m::three_qutrit_unitaries();
    const ObservableFamily fam = ru_correctable_family(UnitaryErrorSet(us, 0));
    EXPECT_EQ(fam.n_params(), 3);
    EXPECT_LE(oracle::real_span_mismatch(fam.basis, m::three_qutrit_family_span()), 1e-9);
    for (const auto &a : fam.basis) {
        for (const auto &u : us) {
            EXPECT_LE((us[0] * a * us[0].adjoint() - u * a * u.adjoint()).norm(), 1e-9);
        }
    }
}

TEST(RuFamily, PauliSetIsIrreducible) {
    const ObservableFamily fam = ru_correctable_family(UnitaryErrorSet(m::pauli_set(), 0));
    ASSERT_EQ(fam.n_params(), 1);
    EXPECT_LE((fam.basis[0] - ComplexMatrix::Identity(2, 2) / std::sqrt(2.0)).norm(), 1e-10);
    const ObservableFamily com = commutant_family(m::pauli_set());
    ASSERT_EQ(com.n_params(), 1);
}

TEST(RuFamily, SingletonAllowsEverything) {
    Rng rng = derive_rng(53, 0);
    EXPECT_EQ(ru_correctable_family(UnitaryErrorSet({random_unitary(3, rng)}, 0)).n_params(), 9);
}

// property: family members recovered for every probability vector over the set
TEST(RuFamily, RecoveredForRandomProbabilities) {
    Rng rng = derive_rng(54, 0);
    for (int d : {2, 3}) {
        // unitaries sharing an eigenbasis keep the family nontrivial
        const ComplexMatrix v = random_unitary(d, rng);
        std::vector<ComplexMatrix> us;
        for (int k = 0; k < 3; ++k) {
            ComplexVector ph(d);
            for (int j = 0; j < d; ++j) ph(j) = std::polar(1.0, 6.28 * std::uniform_real_distribution<>(0, 1)(rng));
            us.push_back(v * ph.asDiagonal() * v.adjoint());
        }
        const UnitaryErrorSet es(us, 0);
        const ObservableFamily fam = ru_correctable_family(es);
        EXPECT_EQ(fam.n_params(), d);
        const TransferMatrix guess = tm(unitary_channel(us[0]));
        std::vector<oracle::Kraus> phis;
        for (int k = 0; k < 10; ++k) {
            const ProbVector p(random_probabilities(3, rng));
            const KrausChannel ch = random_unitary_channel(p, us);
            phis.push_back(ch.kraus());
            EXPECT_LE(verify_family(GuessPair(tm(ch), guess), fam, 50, 100 + k), 1e-9);
        }
        EXPECT_LE(oracle::real_span_mismatch(fam.basis, oracle::correctable(phis, {us[0]}, d)), 1e-8);
    }
}

// property: the family does not depend on which unitary is the guess
TEST(RuFamily, IndependentOfGuessIndex) {
    Rng rng = derive_rng(55, 0);
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<ComplexMatrix> us;
        if (rep % 2 == 0) {
            for (int k = 0; k < 3; ++k) us.push_back(random_unitary(3, rng));
        } else {
            const ComplexMatrix v = random_unitary(3, rng);
            for (int k = 0; k < 3; ++k) {
                ComplexVector ph(3);
                ph << 1.0, std::polar(1.0, 0.7 * (k + 1)), std::polar(1.0, -1.1 * k);
                us.push_back(v * ph.asDiagonal() * v.adjoint());
            }
        }
        const UnitaryErrorSet es(us, 0);
        const ObservableFamily f0 = ru_correctable_family(es);
        for (std::size_t g = 1; g < us.size(); ++g) {
            EXPECT_LE(family_distance(f0, ru_correctable_family(es.with_guess(g))), 1e-9);
        }
    }
}

TEST(TwoUnitary, QubitPair) {
    const auto [u1, u2] = m::qubit_pair();
    const auto [eig, fam] = two_unitary_family(u1, u2);
    EXPECT_LE(multiset_mismatch(eig.eigenvalues, {1.0, -1.0}), 1e-10);
    EXPECT_EQ(fam.n_params(), 2);
    EXPECT_LE(family_distance(fam, m::qubit_pair_family_span()), 1e-9);
    ComplexMatrix want(2, 2);
    want << 1.0 + 2.0 * 0.5, 0.5, 0.5, 1.0;
    EXPECT_LE((m::qubit_pair_member(1.0, 0.5) - want).norm(), 0.0);
}

TEST(TwoUnitary, DegenerateQutritPair) {
    const auto [u1, u2] = m::qutrit_degenerate_pair();
    const ComplexMatrix w = u1.adjoint() * u2;
    ComplexMatrix printed(3, 3);
    printed << 2, 2, -1, 2, -1, 2, -1, 2, 2;
    printed /= 3.0;
    EXPECT_LE((w - printed).norm(), 1e-12);
    EXPECT_LE((m::qutrit_degenerate_w() - printed).norm(), 1e-15);
    const auto [eig, fam] = two_unitary_family(u1, u2);
    EXPECT_LE(multiset_mismatch(eig.eigenvalues, {1.0, -1.0, 1.0}), 1e-10);
    EXPECT_LE(multiset_mismatch(sorted_eigenvalues(w), {1.0, -1.0, 1.0}), 1e-10);
    EXPECT_EQ(eig.groups.size(), 2u);
    EXPECT_EQ(fam.n_params(), 5);
    EXPECT_LE(family_distance(fam, m::qutrit_degenerate_family_span()), 1e-9);
}

TEST(TwoUnitary, EqualUnitariesAllowEverything) {
    Rng rng = derive_rng(56, 0);
    const ComplexMatrix u = random_unitary(3, rng);
    EXPECT_EQ(two_unitary_family(u, u).second.n_params(), 9);
}

TEST(TwoUnitary, Errors) {
    EXPECT_THROW(two_unitary_family(m::pauli(1), 2.0 * m::pauli(1)), NonUnitary);
    EXPECT_THROW(two_unitary_family(m::pauli(1), ComplexMatrix::Identity(3, 3)), DimensionMismatch);
}

// property: at least d parameters, sum of squared multiplicities, agrees with the general route
TEST(TwoUnitary, RandomPairs) {
    Rng rng = derive_rng(57, 0);
    for (int d : {2, 3, 4}) {
        for (int rep = 0; rep < 10; ++rep) {
            const ComplexMatrix u1 = random_unitary(d, rng);
            const ComplexMatrix u2 = random_unitary(d, rng);
            const auto [eig, fam] = two_unitary_family(u1, u2);
            EXPECT_GE(fam.n_params(), d);
            int sq = 0;
            for (const auto &g : eig.groups) sq += int(g.size() * g.size());
            EXPECT_EQ(fam.n_params(), sq);
            EXPECT_LE(family_distance(fam, ru_correctable_family(UnitaryErrorSet({u1, u2}, 1))), 1e-9);
        }
    }
}

TEST(EigGrouping, Invariants) {
    Rng rng = derive_rng(58, 0);
    const ComplexMatrix u = random_unitary(4, rng);
    const EigGrouping g = group_eigenvalues(u);
    ASSERT_EQ(g.eigenvalues.size(), 4u);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(std::abs(g.eigenvalues[k]), 1.0, 1e-10);
        EXPECT_LE((u * g.eigenvectors[k] - g.eigenvalues[k] * g.eigenvectors[k]).norm(), 1e-10);
        Eigen::Index big;
        g.eigenvectors[k].cwiseAbs().maxCoeff(&big);
        EXPECT_LE(std::abs(g.eigenvectors[k](big).imag()), 1e-12);
        EXPECT_GT(g.eigenvectors[k](big).real(), 0.0);
        for (std::size_t j = 0; j < 4; ++j) {
            EXPECT_LE(std::abs(g.eigenvectors[k].dot(g.eigenvectors[j]) - (k == j ? 1.0 : 0.0)), 1e-10);
        }
        if (k > 0) EXPECT_LE(std::arg(g.eigenvalues[k - 1]), std::arg(g.eigenvalues[k]));
    }
    std::size_t total = 0;
    for (const auto &grp : g.groups) total += grp.size();
    EXPECT_EQ(total, 4u);
}

TEST(EigGrouping, GroupsWithinTolerance) {
    ComplexVector ph(3);
    ph << 1.0, std::polar(1.0, 1e-10), -1.0;
    const EigGrouping g = group_eigenvalues(ComplexMatrix(ph.asDiagonal()));
    EXPECT_EQ(g.groups.size(), 2u);
    ph(1) = std::polar(1.0, 1e-6);
    EXPECT_EQ(group_eigenvalues(ComplexMatrix(ph.asDiagonal())).groups.size(), 3u);
}

// (1-p) rho + p W rho W^dagger with the identity as guess: members commute with W
TEST(TwoUnitary, IdentityGuessMembersCommuteWithW) {
    Rng rng = derive_rng(59, 0);
    for (int d : {2, 3}) {
        const ComplexMatrix w = random_unitary(d, rng);
        const ComplexMatrix id = ComplexMatrix::Identity(d, d);
        const std::vector<ComplexMatrix> us = {id, w};
        const GuessPair gp(tm(random_unitary_channel(ProbVector({0.6, 0.4}), us)), TransferMatrix::identity(d));
        const ObservableFamily fam = correctable_family(gp);
        EXPECT_EQ(fam.n_params(), d);
        for (const auto &a : fam.basis) {
            EXPECT_LE((w * a * w.adjoint() - a).norm(), 1e-9);
            EXPECT_LE((modified_observable(gp, a) - a).norm(), 1e-9);
        }
    }
}

TEST(Commutant, SmallCases) {
    EXPECT_EQ(commutant_family({m::pauli(1), m::pauli(3)}).n_params(), 1);
    ComplexVector ph(3);
    ph << 1.0, kI, -1.0;
    const ObservableFamily diag = commutant_family({ComplexMatrix(ph.asDiagonal())});
    EXPECT_EQ(diag.n_params(), 3);
    for (const auto &a : diag.basis) EXPECT_LE((a - ComplexMatrix(a.diagonal().asDiagonal())).norm(), 1e-12);
    EXPECT_EQ(commutant_family({ComplexMatrix::Identity(3, 3)}).n_params(), 9);
}

TEST(Commutant, MatchesBruteForce) {
    Rng rng = derive_rng(60, 0);
    const ComplexMatrix v = random_unitary(3, rng);
    ComplexVector ph(3);
    ph << 1.0, 1.0, kI;
    const std::vector<ComplexMatrix> us = {v * ph.asDiagonal() * v.adjoint()};
    const ObservableFamily fam = commutant_family(us);
    EXPECT_EQ(fam.n_params(), 5);
    EXPECT_LE(oracle::real_span_mismatch(fam.basis, brute_commutant(us)), 1e-8);
    EXPECT_EQ(int(brute_commutant(m::pauli_set()).size()), 1);
}

}  // namespace
}  // namespace qdeconv
