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

#include "qdeconv/models.hpp"

#include <array>
#include <cmath>

namespace qdeconv::models {

namespace {

const Complex kI(0.0, 1.0);

ComplexMatrix kron4(const ComplexMatrix &a) { return kron(kron(a, a), kron(a, a)); }

ComplexVector vec3(Complex a, Complex b, Complex c) {
    ComplexVector v(3);
    v << a, b, c;
    return v;
}

ComplexVector pair_state(const ComplexVector &a, const ComplexVector &b) {
    return kron(a, b.conjugate());
}

}  // namespace

ComplexMatrix pauli(int k) {
    ComplexMatrix m(2, 2);
    switch (k) {
    case 0:
        m << 1.0, 0.0, 0.0, 1.0;
        break;
    case 1:
        m << 0.0, 1.0, 1.0, 0.0;
        break;
    case 2:
        m << 0.0, -kI, kI, 0.0;
        break;
    case 3:
        m << 1.0, 0.0, 0.0, -1.0;
        break;
    default:
        throw Error("pauli: index " + std::to_string(k) + " not in 0..3");
    }
    return m;
}

ComplexMatrix pauli2(int i, int j) { return kron(pauli(i), pauli(j)); }

ComplexMatrix matrix_unit(int d, int k, int l) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    m(k, l) = 1.0;
    return m;
}

KrausChannel qutrit_extreme(double phi) {
    const Complex w = std::polar(1.0, phi);
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix a1 = ComplexMatrix::Zero(3, 3);
    ComplexMatrix a2 = ComplexMatrix::Zero(3, 3);
    ComplexMatrix a3 = ComplexMatrix::Zero(3, 3);
    a1(1, 1) = s;
    a1(2, 2) = -s;
    a2(0, 1) = -s;
    a2(2, 0) = s * w;
    a3(0, 2) = s;
    a3(1, 0) = -s * w;
    return KrausChannel({a1, a2, a3});
}

ComplexMatrix qutrit_extreme_deviation(double phi) {
    const Complex w = std::polar(1.0, phi);
    ComplexVector diag = ComplexVector::Zero(9);
    diag(1) = 1.0 - std::conj(w);
    diag(2) = 1.0 - std::conj(w);
    diag(3) = 1.0 - w;
    diag(6) = 1.0 - w;
    return diag.asDiagonal();
}

ComplexMatrix qutrit_family_member(double a, double b, Complex c, double e) {
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = e;
    m(1, 2) = c;
    m(2, 1) = std::conj(c);
    return m;
}

std::vector<ComplexMatrix> qutrit_family_span() {
    return {qutrit_family_member(1, 0, 0, 0), qutrit_family_member(0, 1, 0, 0),
            qutrit_family_member(0, 0, 0, 1), qutrit_family_member(0, 0, 1.0, 0),
            qutrit_family_member(0, 0, kI, 0)};
}

ComplexMatrix qutrit_adjoint_display(double a, double b, Complex c, double e) {
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(0, 0) = b + e;
    m(1, 1) = a + b;
    m(2, 2) = a + e;
    m(1, 2) = -c;
    m(2, 1) = -std::conj(c);
    return 0.5 * m;
}

ComplexMatrix qutrit_modified_closed_form(double a, double b, Complex c, double e) {
    return qutrit_family_member(b + e - a, a + b - e, -2.0 * c, a + e - b);
}

KrausChannel bitflip_uncorrelated(double p) {
    const double probs[2] = {1.0 - p, p};
    std::vector<ComplexMatrix> kraus;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            kraus.push_back(std::sqrt(probs[i] * probs[j]) * pauli2(i, j));
        }
    }
    return KrausChannel(std::move(kraus));
}

KrausChannel bitflip_correlated(double p) {
    return KrausChannel({std::sqrt(1.0 - p) * pauli2(0, 0), std::sqrt(p) * pauli2(1, 1)});
}

KrausChannel bitflip_memory(double p, double mu) {
    const std::array<KrausChannel, 2> parts = {bitflip_uncorrelated(p), bitflip_correlated(p)};
    return convex_combination(ProbVector({1.0 - mu, mu}), parts);
}

ComplexMatrix bitflip_correlated_inverse_closed_form(double p) {
    return ((1.0 - p) * ComplexMatrix::Identity(16, 16) - p * kron4(pauli(1))) / (1.0 - 2.0 * p);
}

ComplexMatrix bitflip_deviation_closed_form(double p, double mu) {
    const ComplexMatrix ix = pauli2(0, 1);
    const ComplexMatrix xi = pauli2(1, 0);
    return (1.0 - mu) * p * (1.0 - p) *
           (ComplexMatrix::Identity(16, 16) - kron(ix, ix) - kron(xi, xi) + kron4(pauli(1)));
}

std::vector<ComplexMatrix> bitflip_family_span() {
    std::vector<ComplexMatrix> out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 2; j < 4; ++j) {
            out.push_back(pauli2(i, j));
            out.push_back(pauli2(j, i));
        }
    }
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.push_back(pauli2(i, j));
        }
    }
    return out;
}

namespace {

ComplexMatrix bitflip_pattern(const BitflipCoefficients &k, double scale) {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 2; j < 4; ++j) {
            m += scale * (k.a[i][j - 2] * pauli2(i, j) + k.b[i][j - 2] * pauli2(j, i));
        }
        for (int j = 0; j < 2; ++j) {
            m += k.c[i][j] * pauli2(i, j);
        }
    }
    return m;
}

}  // namespace

ComplexMatrix bitflip_family_member(const BitflipCoefficients &k) { return bitflip_pattern(k, 1.0); }

ComplexMatrix bitflip_adjoint_display(const BitflipCoefficients &k, double p) {
    return bitflip_pattern(k, 1.0 - 2.0 * p);
}

ComplexMatrix bitflip_modified_display(const BitflipCoefficients &k, double p) {
    return bitflip_pattern(k, 1.0 / (1.0 - 2.0 * p));
}

ComplexMatrix observable_b() {
    const ComplexMatrix yz = pauli(2) + pauli(3);
    const ComplexMatrix id = pauli(0);
    return kron(id, yz) + kron(yz, id) + kron(yz, yz);
}

ComplexMatrix rho_x(double x) {
    return 0.25 * (pauli2(0, 0) + x * (pauli2(2, 0) + pauli2(0, 3)) + pauli2(2, 3));
}

double partial_delta_exp_closed_form(double p, double mu, double x) {
    return p * ((1.0 - p) * (1.0 - mu) + x);
}

double partial_delta_nd_closed_form(double p, double mu) { return p * (1.0 - p) * (1.0 - mu); }

std::vector<ComplexMatrix> three_qutrit_unitaries() {
    const double r2 = std::sqrt(2.0);
    const double r6 = std::sqrt(6.0);
    const double norm = 1.0 / std::sqrt(12.0);
    ComplexMatrix u1(3, 3);
    u1 << r2 + 1.0, r6, r2 - 1.0,  //
        r2 + 1.0, -r6, r2 - 1.0,    //
        r2 - 2.0, 0.0, r2 + 2.0;
    ComplexMatrix u2(3, 3);
    u2 << r2 + 1.0, kI * r6, r2 - 1.0,  //
        r2 + 1.0, -kI * r6, r2 - 1.0,    //
        r2 - 2.0, 0.0, r2 + 2.0;
    ComplexMatrix u3(3, 3);
    u3 << r2 + kI, kI * r6, r2 - kI,  //
        r2 + kI, -kI * r6, r2 - kI,    //
        r2 - 2.0 * kI, 0.0, r2 + 2.0 * kI;
    return {norm * u1, norm * u2, norm * u3};
}

std::vector<ComplexVector> three_qutrit_s2_span() {
    const ComplexVector l1 = vec3(1, 0, 0);
    const ComplexVector l2 = vec3(0, 1, 0);
    const ComplexVector l3 = vec3(0, 0, 1);
    return {pair_state(l1, l1), pair_state(l2, l2), pair_state(l3, l3), pair_state(l1, l3),
            pair_state(l3, l1)};
}

std::vector<ComplexVector> three_qutrit_s3_span() {
    const double s = 1.0 / std::sqrt(2.0);
    const ComplexVector m1 = vec3(s, 0, -s);
    const ComplexVector m2 = vec3(s, 0, s);
    const ComplexVector m3 = vec3(0, 1, 0);
    return {pair_state(m1, m1), pair_state(m2, m2), pair_state(m3, m3), pair_state(m1, m3),
            pair_state(m3, m1)};
}

std::vector<Complex> three_qutrit_s2_eigenvalues() { return {1.0, -kI, 1.0}; }

std::vector<Complex> three_qutrit_s3_eigenvalues() { return {-kI, 1.0, -kI}; }

std::vector<ComplexMatrix> three_qutrit_family_span() {
    return {matrix_unit(3, 0, 0) + matrix_unit(3, 2, 2), matrix_unit(3, 0, 2) + matrix_unit(3, 2, 0),
            matrix_unit(3, 1, 1)};
}

std::pair<ComplexMatrix, ComplexMatrix> qubit_pair() {
    ComplexMatrix u1(2, 2);
    u1 << 1.0, -1.0, 1.0, 1.0;
    return {u1 / std::sqrt(2.0), pauli(1)};
}

ComplexMatrix qubit_pair_member(double a, double b) {
    ComplexMatrix m(2, 2);
    m << a + 2.0 * b, b, b, a;
    return m;
}

std::vector<ComplexMatrix> qubit_pair_family_span() {
    return {qubit_pair_member(1, 0), qubit_pair_member(0, 1)};
}

ComplexMatrix qubit_pair_modified_display(double a, double b) {
    ComplexMatrix m(2, 2);
    m << a, b, b, a + 2.0 * b;
    return m;
}

std::pair<ComplexMatrix, ComplexMatrix> qutrit_degenerate_pair() {
    const double r2 = std::sqrt(2.0);
    ComplexMatrix u1(3, 3);
    u1 << 1.0, 1.0, 0.0,  //
        1.0, -1.0, 0.0,    //
        0.0, 0.0, r2;
    ComplexMatrix u2(3, 3);
    u2 << 4.0, 1.0, 1.0,  //
        0.0, 3.0, -3.0,    //
        -r2, 2.0 * r2, 2.0 * r2;
    return {u1 / r2, u2 / (3.0 * r2)};
}

ComplexMatrix qutrit_degenerate_w() {
    ComplexMatrix w(3, 3);
    w << 2.0, 2.0, -1.0,  //
        2.0, -1.0, 2.0,    //
        -1.0, 2.0, 2.0;
    return w / 3.0;
}

std::vector<ComplexMatrix> qutrit_degenerate_family_span() {
    // The -1 eigenvector is (1,-2,1)/sqrt(6); it is the complement of the degenerate pair.
    const ComplexVector w1 = vec3(1, 1, 1) / std::sqrt(3.0);
    const ComplexVector w2 = vec3(1, -2, 1) / std::sqrt(6.0);
    const ComplexVector w3 = vec3(1, 0, -1) / std::sqrt(2.0);
    const ComplexMatrix x13 = w1 * w3.adjoint();
    return {w1 * w1.adjoint(), w2 * w2.adjoint(), w3 * w3.adjoint(), x13 + x13.adjoint(),
            kI * (x13 - x13.adjoint())};
}

std::vector<ComplexMatrix> pauli_set() { return {pauli(0), pauli(1), pauli(2), pauli(3)}; }

}  // namespace qdeconv::models
