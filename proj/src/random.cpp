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

#include "qdeconv/random.hpp"

#include <cmath>

#include <Eigen/QR>

namespace qdeconv {

Rng derive_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index),
                      std::uint32_t(index >> 32)};
    return Rng(seq);
}

ComplexMatrix ginibre(int rows, int cols, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    return g;
}

ComplexMatrix ginibre(int d, Rng &rng) { return ginibre(d, d, rng); }

ComplexMatrix random_density_matrix(int d, Rng &rng) {
    const ComplexMatrix g = ginibre(d, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    // exact Hermiticity; the product above is only Hermitian up to rounding
    return 0.5 * (rho + rho.adjoint());
}

namespace {

ComplexMatrix haar_columns(int rows, int cols, Rng &rng) {
    const ComplexMatrix g = ginibre(rows, cols, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
    const ComplexMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    for (int j = 0; j < cols; ++j) {
        const Complex diag = r(j, j);
        const double mag = std::abs(diag);
        if (mag > 0.0) {
            q.col(j) *= diag / mag;
        }
    }
    return q;
}

}  // namespace

ComplexMatrix random_unitary(int d, Rng &rng) { return haar_columns(d, d, rng); }

ComplexMatrix random_hermitian(int d, Rng &rng) {
    const ComplexMatrix g = ginibre(d, rng);
    return 0.5 * (g + g.adjoint());
}

std::vector<double> random_probabilities(int n, Rng &rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> p(static_cast<std::size_t>(n));
    double total = 0.0;
    for (auto &x : p) {
        x = expo(rng);
        total += x;
    }
    for (auto &x : p) {
        x /= total;
    }
    return p;
}

std::vector<ComplexMatrix> random_kraus(int d, int n_kraus, Rng &rng) {
    const ComplexMatrix iso = haar_columns(d * n_kraus, d, rng);
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(static_cast<std::size_t>(n_kraus));
    for (int k = 0; k < n_kraus; ++k) {
        kraus.emplace_back(iso.block(k * d, 0, d, d));
    }
    return kraus;
}

}  // namespace qdeconv
