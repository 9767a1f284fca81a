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

#include <span>
#include <vector>

#include "qdeconv/linalg.hpp"

namespace qdeconv {

struct CptpViolation : Error {
    using Error::Error;
};

/// A channel rho -> sum_k A_k rho A_k^dagger on a d-dimensional system.
///
/// The checked constructor enforces sum_k A_k^dagger A_k = I within `tol`. `unchecked` skips
/// that test so diagnostics (is_cptp) can be run on arbitrary Kraus lists.
class KrausChannel {
  public:
    explicit KrausChannel(std::vector<ComplexMatrix> kraus, double tol = Tolerances{}.tol);

    static KrausChannel unchecked(std::vector<ComplexMatrix> kraus);

    int dim() const { return dim_; }
    const std::vector<ComplexMatrix> &kraus() const { return kraus_; }
    std::size_t size() const { return kraus_.size(); }

    /// ||sum_k A_k^dagger A_k - I||_F.
    double trace_preservation_residual() const;

  private:
    struct NoCheck {};
    KrausChannel(std::vector<ComplexMatrix> kraus, NoCheck);

    int dim_ = 0;
    std::vector<ComplexMatrix> kraus_;
};

/// d^2 x d^2 matrix acting on row-major vectorized operators.
struct TransferMatrix {
    int dim = 0;
    ComplexMatrix gamma;

    TransferMatrix() = default;
    TransferMatrix(int d, ComplexMatrix g);

    static TransferMatrix identity(int d);
};

/// (Phi (x) id)|Omega><Omega| with |Omega> = sum_i |ii> / sqrt(d).
struct ChoiMatrix {
    int dim = 0;
    ComplexMatrix choi;

    ChoiMatrix() = default;
    ChoiMatrix(int d, ComplexMatrix c);
};

/// Nonnegative weights summing to one.
class ProbVector {
  public:
    explicit ProbVector(std::vector<double> probs, double tol = Tolerances{}.tol);

    const std::vector<double> &probs() const { return probs_; }
    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t k) const { return probs_[k]; }

  private:
    std::vector<double> probs_;
};

struct CptpReport {
    bool trace_preserving = false;
    bool completely_positive = false;
    double trace_residual = 0.0;
    /// Smallest eigenvalue of the Choi matrix.
    double choi_min_eigenvalue = 0.0;
};

TransferMatrix transfer_from_kraus(const KrausChannel &ch);
ChoiMatrix choi_from_channel(const KrausChannel &ch);
ChoiMatrix choi_from_transfer(const TransferMatrix &t);

/// Index reshuffle gamma[i*d+j, k*d+l] = d * choi[i*d+k, j*d+l].
TransferMatrix reshuffle(const ChoiMatrix &c);

TransferMatrix adjoint_transfer(const TransferMatrix &t);

/// sigma_min(gamma) / sigma_max(gamma).
double conditioning(const TransferMatrix &t);

/// Throws SingularChannel when sigma_min <= cutoff * sigma_max.
TransferMatrix inverse_transfer(const TransferMatrix &t,
                                double cutoff = Tolerances{}.singular_cutoff);

ComplexMatrix apply_channel(const TransferMatrix &t, const ComplexMatrix &rho);

/// t1 o t2 (t2 acts first).
TransferMatrix compose(const TransferMatrix &t1, const TransferMatrix &t2);

KrausChannel unitary_channel(const ComplexMatrix &u, double tol = Tolerances{}.tol);

/// Kraus operators sqrt(p_k) U_k.
KrausChannel random_unitary_channel(const ProbVector &ps, std::span<const ComplexMatrix> us,
                                    double tol = Tolerances{}.tol);

/// sum_k w_k Phi_k at the Kraus level (operators sqrt(w_k) A of each component).
KrausChannel convex_combination(const ProbVector &weights, std::span<const KrausChannel> parts);
TransferMatrix convex_combination(const ProbVector &weights,
                                  std::span<const TransferMatrix> parts);

CptpReport is_cptp(const KrausChannel &ch, double tol = Tolerances{}.tol);
/// Same diagnostics for a bare linear map, e.g. the inverse of a channel.
CptpReport is_cptp(const TransferMatrix &t, double tol = Tolerances{}.tol);

}  // namespace qdeconv
