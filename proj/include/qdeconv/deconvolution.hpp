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

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "qdeconv/channel.hpp"
#include "qdeconv/random.hpp"

namespace qdeconv {

struct VerificationFailed : Error {
    using Error::Error;
};

/// True channel, guessed channel and the cached inverse of the guess.
///
/// Construction fails with SingularChannel when the guess cannot be inverted.
class GuessPair {
  public:
    GuessPair(TransferMatrix phi, TransferMatrix phi_g,
              double cutoff = Tolerances{}.singular_cutoff);

    const TransferMatrix &phi() const { return phi_; }
    const TransferMatrix &phi_g() const { return phi_g_; }
    const TransferMatrix &phi_g_inv() const { return phi_g_inv_; }
    int dim() const { return phi_.dim; }

  private:
    TransferMatrix phi_;
    TransferMatrix phi_g_;
    TransferMatrix phi_g_inv_;
};

/// Real span of Hermitian matrices, orthonormal under the Hilbert-Schmidt inner product.
struct ObservableFamily {
    int dim = 0;
    std::vector<ComplexMatrix> basis;
    /// Parameter values the family was intersected over (empty for a single channel).
    std::vector<double> probes;
    /// Largest Delta_ND seen while self-verifying; NaN when not verified.
    double verified_max_delta = std::numeric_limits<double>::quiet_NaN();

    int n_params() const { return int(basis.size()); }
};

struct DeconvReport {
    double ideal = 0.0;
    double experimental = 0.0;
    double deconvolved = 0.0;
    double delta_exp = 0.0;
    double delta_nd = 0.0;
    /// delta_nd < delta_exp (strict).
    bool improved = false;
    /// |delta_nd - delta_exp| <= 1e-12; never counted as improved.
    bool tie = false;
};

/// Knobs for kernel extraction and self-verification.
struct FamilyOptions {
    double kernel_rel_tol = Tolerances{}.kernel_rel_tol;
    double hermitian_tol = 1e-8;
    int verify_states = 100;
    std::uint64_t seed = kDefaultSeed;
    double verify_threshold = 1e-9;
    /// Parameter probes for unknown-parameter channels (spread over the open range).
    int n_probes = 5;
    /// Extra random parameter values checked after the intersection.
    int n_spot_checks = 3;
};

/// A channel known up to one real parameter in [lo, hi].
struct ParametricChannel {
    std::function<TransferMatrix(double)> at;
    double lo = 0.0;
    double hi = 1.0;
    /// Overrides the evenly spread default probes when nonempty.
    std::vector<double> probes;

    std::vector<double> probe_values(int n_probes) const;
};

/// I - gamma_phi^dagger (gamma_g^-1)^dagger.
ComplexMatrix deviation_operator(const GuessPair &gp);

/// Orthonormal basis of the numerical null space (sigma <= rel_tol * max(sigma_max, 1)),
/// returned in canonical echelon form so the output depends only on the subspace.
std::vector<ComplexVector> kernel(const ComplexMatrix &f,
                                  double rel_tol = Tolerances{}.kernel_rel_tol);

/// Hermitian matrices whose vectorization lies in the complex span of `kernel_basis`.
ObservableFamily hermitian_section(const std::vector<ComplexVector> &kernel_basis, int d,
                                   double tol = 1e-8);

/// devec((gamma_g^-1)^dagger vec(A)): the observable to measure on the noisy state.
ComplexMatrix modified_observable(const GuessPair &gp, const ComplexMatrix &a);

/// Re Tr(A rho); throws if the imaginary part exceeds 1e-10.
double expectation(const ComplexMatrix &a, const ComplexMatrix &rho);

DeconvReport evaluate(const GuessPair &gp, const ComplexMatrix &a, const ComplexMatrix &rho);

/// <<rho| F |A>>, the vectorized form of <A>_ideal - <A>_ND.
Complex deviation_bilinear(const GuessPair &gp, const ComplexMatrix &a, const ComplexMatrix &rho);

/// hermitian_section(kernel(deviation_operator(gp))), self-verified on seeded random states.
/// Throws VerificationFailed if any family member misses the threshold.
ObservableFamily correctable_family(const GuessPair &gp, const FamilyOptions &opts = {});

/// Family valid for every parameter value of `phi`: kernels intersected over the probes, then
/// spot-checked at opts.n_spot_checks random parameter values.
ObservableFamily correctable_family(const ParametricChannel &phi, const TransferMatrix &guess,
                                    const FamilyOptions &opts = {});

/// Family valid for every channel in `phis` (a finite set of possible true channels).
ObservableFamily correctable_family(const std::vector<TransferMatrix> &phis,
                                    const TransferMatrix &guess, const FamilyOptions &opts = {});

/// Max Delta_ND over n_states seeded random states, for every basis element and one random
/// real combination per state.
double verify_family(const GuessPair &gp, const ObservableFamily &fam, int n_states,
                     std::uint64_t seed);

/// Relative residual of projecting A onto the real span of the family.
double membership_residual(const ComplexMatrix &a, const ObservableFamily &fam);

/// Mutual projection residual between two families; 1 when dimensions differ.
double family_distance(const ObservableFamily &a, const ObservableFamily &b);

/// Same for a family against an arbitrary (not necessarily orthonormal) list of Hermitian matrices.
double family_distance(const ObservableFamily &a, const std::vector<ComplexMatrix> &spanning);

struct SweepEntry {
    std::size_t index = 0;
    /// -1 when the candidate guess is singular.
    int n_params = -1;
};

/// Ranks candidate guesses by family size, descending; ties keep ascending index.
std::vector<SweepEntry> guess_sweep(const TransferMatrix &phi,
                                    const std::vector<TransferMatrix> &candidates,
                                    const FamilyOptions &opts = {});

}  // namespace qdeconv
