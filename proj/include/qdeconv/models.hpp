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

// Concrete channels, observables and states used by the example scenarios.

#pragma once

#include <utility>
#include <vector>

#include "qdeconv/channel.hpp"

namespace qdeconv::models {

/// sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z.
ComplexMatrix pauli(int k);

/// sigma_i (x) sigma_j.
ComplexMatrix pauli2(int i, int j);

/// |k><l| in dimension d.
ComplexMatrix matrix_unit(int d, int k, int l);

// --- qutrit extreme channel ---------------------------------------------------------------

/// Three Kraus operators with the phase omega = e^{i phi}; unital, not random-unitary.
KrausChannel qutrit_extreme(double phi);

/// diag(0, 1-conj(w), 1-conj(w), 1-w, 0, 0, 1-w, 0, 0) for guess phi_g = 0.
ComplexMatrix qutrit_extreme_deviation(double phi);

/// Hermitian spanning set of [[a,0,0],[0,b,c],[0,conj(c),e]].
std::vector<ComplexMatrix> qutrit_family_span();

/// (1/2)[[b+e,0,0],[0,a+b,-c],[0,-conj(c),a+e]], which is the guess adjoint applied to the
/// family member (a, b, c, e).
ComplexMatrix qutrit_adjoint_display(double a, double b, Complex c, double e);

/// Inverse of the map above: the family member (b+e-a, a+b-e, -2c, a+e-b).
ComplexMatrix qutrit_modified_closed_form(double a, double b, Complex c, double e);

ComplexMatrix qutrit_family_member(double a, double b, Complex c, double e);

// --- two-qubit bit flip with partial memory -----------------------------------------------

KrausChannel bitflip_uncorrelated(double p);
KrausChannel bitflip_correlated(double p);
/// (1 - mu) uncorrelated + mu correlated.
KrausChannel bitflip_memory(double p, double mu);

/// ((1-p) I^{(x)4} - p X^{(x)4}) / (1 - 2p).
ComplexMatrix bitflip_correlated_inverse_closed_form(double p);

/// (1-mu) p (1-p) (I_16 - (I(x)X)^{(x)2} - (X(x)I)^{(x)2} + X^{(x)4}).
ComplexMatrix bitflip_deviation_closed_form(double p, double mu);

/// sigma_i (x) sigma_j for i in {0,1}, j in {2,3}, the swapped products, and i, j in {0,1}.
std::vector<ComplexMatrix> bitflip_family_span();

/// Coefficients laid out as a[i][j-2], b[i][j-2], c[i][j].
struct BitflipCoefficients {
    double a[2][2] = {};
    double b[2][2] = {};
    double c[2][2] = {};
};

ComplexMatrix bitflip_family_member(const BitflipCoefficients &k);

/// Adjoint of the correlated guess on a family member: the Y/Z-bearing terms scale by (1 - 2p).
ComplexMatrix bitflip_adjoint_display(const BitflipCoefficients &k, double p);

/// Same pattern with (1 - 2p)^{-1}: the inverse adjoint, i.e. the modified observable.
ComplexMatrix bitflip_modified_display(const BitflipCoefficients &k, double p);

/// I (x) (Y + Z) + (Y + Z) (x) I + (Y + Z) (x) (Y + Z).
ComplexMatrix observable_b();

/// (1/4)(I(x)I + x (Y(x)I + I(x)Z) + Y(x)Z), a state for 0 <= x <= 1.
ComplexMatrix rho_x(double x);

/// p [(1-p)(1-mu) + x].
double partial_delta_exp_closed_form(double p, double mu, double x);
/// p (1-p)(1-mu).
double partial_delta_nd_closed_form(double p, double mu);

// --- random unitary examples --------------------------------------------------------------

/// Three qutrit unitaries; the guess is the first.
std::vector<ComplexMatrix> three_qutrit_unitaries();

/// Listed spanning vectors of the invariant subspaces S_2 and S_3 (kron(a, conj(b)) pairs).
std::vector<ComplexVector> three_qutrit_s2_span();
std::vector<ComplexVector> three_qutrit_s3_span();
/// {1, -i, 1} and {-i, 1, -i}.
std::vector<Complex> three_qutrit_s2_eigenvalues();
std::vector<Complex> three_qutrit_s3_eigenvalues();

/// [[a,0,b],[0,c,0],[b,0,a]].
std::vector<ComplexMatrix> three_qutrit_family_span();

/// U1 = rotation, U2 = X.
std::pair<ComplexMatrix, ComplexMatrix> qubit_pair();
/// [[a+2b,b],[b,a]].
std::vector<ComplexMatrix> qubit_pair_family_span();
ComplexMatrix qubit_pair_member(double a, double b);
/// [[a,b],[b,a+2b]].
ComplexMatrix qubit_pair_modified_display(double a, double b);

std::pair<ComplexMatrix, ComplexMatrix> qutrit_degenerate_pair();
/// (1/3)[[2,2,-1],[2,-1,2],[-1,2,2]].
ComplexMatrix qutrit_degenerate_w();
/// |w1><w1|, |w2><w2|, |w3><w3| and the Hermitian |w1><w3| pair.
std::vector<ComplexMatrix> qutrit_degenerate_family_span();

/// {I, X, Y, Z}.
std::vector<ComplexMatrix> pauli_set();

}  // namespace qdeconv::models
