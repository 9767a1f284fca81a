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

#include "qdeconv/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "qdeconv/deconvolution.hpp"
#include "qdeconv/models.hpp"
#include "qdeconv/random_unitary.hpp"

namespace qdeconv {

namespace m = models;

bool ScenarioResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.passed; });
}

void ScenarioResult::check(std::string label, double residual, double tolerance) {
    checks.push_back({std::move(label), residual <= tolerance, residual, tolerance});
}

void ScenarioResult::check_true(std::string label, bool ok) {
    checks.push_back({std::move(label), ok, ok ? 0.0 : 1.0, 0.0});
}

namespace {

using Params = std::map<std::string, double>;
using Runner = std::function<void(ScenarioResult &, const Params &)>;

constexpr double kSpanTol = 1e-9;
constexpr double kExactTol = 1e-10;
constexpr double kNoThreshold = std::numeric_limits<double>::infinity();

TransferMatrix tm(const KrausChannel &ch) { return transfer_from_kraus(ch); }

TransferMatrix unitary_tm(const ComplexMatrix &u) { return tm(unitary_channel(u)); }

int as_count(const Params &p, const std::string &key) {
    const double v = p.at(key);
    if (v < 1.0 || v != std::floor(v)) {
        throw OverrideError(key + " must be a positive integer, got " + std::to_string(v));
    }
    return int(v);
}

FamilyOptions options_for(std::uint64_t seed, int states) {
    FamilyOptions opts;
    opts.seed = seed;
    opts.verify_states = states;
    // the scenario records the verification result as a check instead of throwing
    opts.verify_threshold = kNoThreshold;
    return opts;
}

ComplexMatrix ortho(const std::vector<ComplexVector> &vs) {
    return orthonormal_span(columns(vs, vs.front().size()), 1e-10);
}

// Max |a_k - b_k| after sorting both by phase.
double eigenvalue_mismatch(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) {
        return std::numeric_limits<double>::infinity();
    }
    auto by_phase = [](Complex x, Complex y) { return std::arg(x) < std::arg(y); };
    std::sort(a.begin(), a.end(), by_phase);
    std::sort(b.begin(), b.end(), by_phase);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return worst;
}

std::vector<Complex> eigenvalues_of(const ComplexMatrix &u) {
    return group_eigenvalues(u).eigenvalues;
}

// Max Delta_ND of the family over random probability vectors on the error set.
double ru_max_delta(const std::vector<ComplexMatrix> &us, std::size_t guess,
                    const ObservableFamily &fam, int n_probs, int n_states, std::uint64_t seed) {
    double worst = 0.0;
    const TransferMatrix g = unitary_tm(us[guess]);
    for (int k = 0; k < n_probs; ++k) {
        Rng rng = derive_rng(seed, 100 + std::uint64_t(k));
        const ProbVector p(random_probabilities(int(us.size()), rng));
        const GuessPair gp(tm(random_unitary_channel(p, us)), g);
        worst = std::max(worst, verify_family(gp, fam, n_states, seed + std::uint64_t(k)));
    }
    return worst;
}

void set_family(ScenarioResult &r, const ObservableFamily &fam, int expected) {
    r.family_dim = fam.n_params();
    r.expected_family_dim = expected;
    r.check("family dimension equals " + std::to_string(expected),
            std::abs(double(fam.n_params() - expected)), 0.0);
}

double max_over_members(const ObservableFamily &fam,
                        const std::function<double(const ComplexMatrix &)> &f) {
    double worst = 0.0;
    for (const auto &a : fam.basis) {
        worst = std::max(worst, f(a));
    }
    return worst;
}

// --- scenarios ----------------------------------------------------------------------------

void qutrit_extreme(ScenarioResult &r, const Params &p) {
    const int states = as_count(p, "states");
    const TransferMatrix guess = tm(m::qutrit_extreme(0.0));
    ParametricChannel phi{[](double x) { return tm(m::qutrit_extreme(x)); }, 0.0,
                          2.0 * std::numbers::pi, {}};
    const ObservableFamily fam = correctable_family(phi, guess, options_for(r.seed, states));
    r.probes = fam.probes;
    set_family(r, fam, 5);
    r.check("span equals block pattern diag(a) + [[b,c],[conj c,e]]",
            family_distance(fam, m::qutrit_family_span()), kSpanTol);

    const std::vector<double> extra = {0.7, std::numbers::pi / 2.0, 4.0};
    double worst = fam.verified_max_delta;
    for (std::size_t k = 0; k < extra.size(); ++k) {
        const GuessPair gp(phi.at(extra[k]), guess);
        worst = std::max(worst, verify_family(gp, fam, states, r.seed + 1000 + k));
    }
    r.max_delta_nd = worst;
    r.check("max Delta_ND over seeded states and phi values", worst, kSpanTol);

    double f_residual = 0.0;
    double k_residual = 0.0;
    for (double x : extra) {
        const GuessPair gp(phi.at(x), guess);
        f_residual = std::max(f_residual,
                              (deviation_operator(gp) - m::qutrit_extreme_deviation(x)).norm());
        const auto ker = kernel(deviation_operator(gp));
        std::vector<ComplexVector> units;
        for (int c : {0, 4, 5, 7, 8}) {
            units.push_back(ComplexVector::Unit(9, c));
        }
        k_residual = std::max(k_residual, span_distance(columns(ker, 9), ortho(units)));
    }
    r.check("deviation operator equals diag(0,1-conj w,1-conj w,1-w,0,0,1-w,0,0)", f_residual,
            kExactTol);
    r.check("kernel spanned by coordinates {0,4,5,7,8}", k_residual, kSpanTol);

    Rng rng = derive_rng(r.seed, 7);
    std::normal_distribution<double> normal;
    const double a = normal(rng), b = normal(rng), e = normal(rng);
    const Complex c(normal(rng), normal(rng));
    const GuessPair gp(phi.at(1.0), guess);
    const ComplexMatrix a_mat = m::qutrit_family_member(a, b, c, e);
    const ComplexMatrix adj = devectorize(adjoint_transfer(guess).gamma * vectorize(a_mat), 3);
    r.check("guess adjoint equals (1/2)[[b+e,0,0],[0,a+b,-c],[0,-conj c,a+e]]",
            (adj - m::qutrit_adjoint_display(a, b, c, e)).norm(), kExactTol);
    r.check("modified observable equals the inverse of that map",
            (modified_observable(gp, a_mat) - m::qutrit_modified_closed_form(a, b, c, e)).norm(),
            kExactTol);
    const CptpReport rep = is_cptp(m::qutrit_extreme(1.0));
    r.check_true("channel is CPTP", rep.trace_preserving && rep.completely_positive);
    const ComplexMatrix mixed = ComplexMatrix::Identity(3, 3) / 3.0;
    r.check("channel is unital", (apply_channel(phi.at(1.0), mixed) - mixed).norm(), kExactTol);
}

ComplexVector pm_ket(const char *signs) {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix v = ComplexMatrix::Identity(1, 1);
    for (const char *c = signs; *c != '\0'; ++c) {
        ComplexVector q(2);
        q << s, (*c == '+' ? s : -s);
        v = kron(v, q);
    }
    return v;
}

void bitflip_memory(ScenarioResult &r, const Params &p) {
    const double prob = p.at("p");
    const int states = as_count(p, "states");
    if (!(prob > 0.0 && prob < 0.5)) {
        throw OverrideError("p must lie in (0, 0.5)");
    }
    const TransferMatrix guess = tm(m::bitflip_correlated(prob));
    ParametricChannel phi{[prob](double mu) { return tm(m::bitflip_memory(prob, mu)); }, 0.0, 1.0,
                          {}};
    const ObservableFamily fam = correctable_family(phi, guess, options_for(r.seed, states));
    r.probes = fam.probes;
    set_family(r, fam, 12);
    r.check("span equals the 12 listed Pauli products",
            family_distance(fam, m::bitflip_family_span()), kSpanTol);
    r.max_delta_nd = fam.verified_max_delta;
    r.check("max Delta_ND over seeded states and mu values", fam.verified_max_delta, kSpanTol);

    const TransferMatrix inv = inverse_transfer(guess);
    r.check("guess inverse equals ((1-p) I - p X^4) / (1-2p)",
            (inv.gamma - m::bitflip_correlated_inverse_closed_form(prob)).norm(), kExactTol);

    double f_residual = 0.0;
    double k_residual = 0.0;
    std::vector<ComplexVector> listed;
    for (const char *s : {"++++", "----", "+++-", "++-+", "+-++", "-+++", "---+", "--+-", "-+--",
                          "+---", "+-+-", "-+-+"}) {
        listed.push_back(pm_ket(s));
    }
    for (double mu : fam.probes) {
        const GuessPair gp(phi.at(mu), guess);
        f_residual = std::max(f_residual, (deviation_operator(gp) -
                                           m::bitflip_deviation_closed_form(prob, mu))
                                              .norm());
        k_residual = std::max(k_residual,
                              span_distance(columns(kernel(deviation_operator(gp)), 16),
                                            ortho(listed)));
    }
    r.check("deviation operator equals the closed form at every probe", f_residual, kExactTol);
    r.check("kernel equals the listed span of +/- product kets", k_residual, kSpanTol);

    Rng rng = derive_rng(r.seed, 11);
    std::normal_distribution<double> normal;
    m::BitflipCoefficients k;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            k.a[i][j] = normal(rng);
            k.b[i][j] = normal(rng);
            k.c[i][j] = normal(rng);
        }
    }
    const ComplexMatrix a = m::bitflip_family_member(k);
    const ComplexMatrix adj = devectorize(adjoint_transfer(guess).gamma * vectorize(a), 4);
    r.check("guess adjoint scales the Y/Z terms by (1-2p)",
            (adj - m::bitflip_adjoint_display(k, prob)).norm(), kExactTol);
    const GuessPair gp(phi.at(0.5), guess);
    r.check("modified observable scales the Y/Z terms by 1/(1-2p)",
            (modified_observable(gp, a) - m::bitflip_modified_display(k, prob)).norm(), kExactTol);

    bool singular = false;
    try {
        const GuessPair bad(phi.at(0.5), tm(m::bitflip_correlated(0.5)));
    } catch (const SingularChannel &) {
        singular = true;
    }
    r.check_true("correlated guess at p = 0.5 is rejected as singular", singular);
}

void ru_three_unitaries(ScenarioResult &r, const Params &p) {
    const int states = as_count(p, "states");
    const auto us = m::three_qutrit_unitaries();
    const UnitaryErrorSet es(us, 0);
    r.check("eigenvalues of U2^dagger U1 are {1,-i,1}",
            eigenvalue_mismatch(eigenvalues_of(us[1].adjoint() * us[0]),
                                m::three_qutrit_s2_eigenvalues()),
            kExactTol);
    r.check("eigenvalues of U3^dagger U1 are {-i,1,-i}",
            eigenvalue_mismatch(eigenvalues_of(us[2].adjoint() * us[0]),
                                m::three_qutrit_s3_eigenvalues()),
            kExactTol);
    const auto s2 = invariant_subspace(gamma_i(es, 1));
    const auto s3 = invariant_subspace(gamma_i(es, 2));
    r.check("dim S_2 = 5", std::abs(double(s2.size()) - 5.0), 0.0);
    r.check("dim S_3 = 5", std::abs(double(s3.size()) - 5.0), 0.0);
    r.check("S_2 equals the listed span",
            span_distance(columns(s2, 9), ortho(m::three_qutrit_s2_span())), kSpanTol);
    r.check("S_3 equals the listed span",
            span_distance(columns(s3, 9), ortho(m::three_qutrit_s3_span())), kSpanTol);

    const ObservableFamily fam = ru_correctable_family(es);
    set_family(r, fam, 3);
    r.check("span equals [[a,0,b],[0,c,0],[b,0,a]]",
            family_distance(fam, m::three_qutrit_family_span()), kSpanTol);
    r.check("U_g A U_g^dagger = U_i A U_i^dagger for every member",
            max_over_members(fam,
                             [&](const ComplexMatrix &a) {
                                 double w = 0.0;
                                 const ComplexMatrix ref = us[0] * a * us[0].adjoint();
                                 for (const auto &u : us) {
                                     w = std::max(w, (u * a * u.adjoint() - ref).norm());
                                 }
                                 return w;
                             }),
            kSpanTol);
    r.max_delta_nd = ru_max_delta(us, 0, fam, 10, states, r.seed);
    r.check("max Delta_ND over random probabilities and states", r.max_delta_nd, kSpanTol);
}

void two_unitary_common(ScenarioResult &r, const ComplexMatrix &u1, const ComplexMatrix &u2,
                        int expected, const std::vector<ComplexMatrix> &span, int states) {
    const auto [grouping, fam] = two_unitary_family(u1, u2);
    set_family(r, fam, expected);
    r.check("span equals the listed family", family_distance(fam, span), kSpanTol);
    const ObservableFamily ru = ru_correctable_family(UnitaryErrorSet({u1, u2}, 1));
    r.check("agrees with the invariant-subspace construction", family_distance(fam, ru), kSpanTol);
    r.max_delta_nd = ru_max_delta({u1, u2}, 1, fam, 10, states, r.seed);
    r.check("max Delta_ND over random probabilities and states", r.max_delta_nd, kSpanTol);
    r.metrics["degeneracy_classes"] = double(grouping.groups.size());
}

void ru_two_qubit(ScenarioResult &r, const Params &p) {
    const int states = as_count(p, "states");
    const auto [u1, u2] = m::qubit_pair();
    ComplexMatrix w_display(2, 2);
    w_display << 1.0, 1.0, 1.0, -1.0;
    w_display /= std::sqrt(2.0);
    const ComplexMatrix w = u1.adjoint() * u2;
    r.check("W = U1^dagger U2 equals (1/sqrt2)[[1,1],[1,-1]]", (w - w_display).norm(), kExactTol);
    const EigGrouping g = group_eigenvalues(w);
    r.check("eigenvalues of W are {1,-1}", eigenvalue_mismatch(g.eigenvalues, {1.0, -1.0}),
            kExactTol);
    double v_residual = 0.0;
    for (double sign : {1.0, -1.0}) {
        ComplexVector v(2);
        v << 1.0 + sign * std::sqrt(2.0), 1.0;
        v.normalize();
        double best = 1.0;
        for (const auto &e : g.eigenvectors) {
            best = std::min(best, projection_residual(v, e));
        }
        v_residual = std::max(v_residual, best);
    }
    r.check("eigenvectors are (1 +- sqrt2, 1)", v_residual, kSpanTol);
    two_unitary_common(r, u1, u2, 2, m::qubit_pair_family_span(), states);

    Rng rng = derive_rng(r.seed, 13);
    std::normal_distribution<double> normal;
    const double a = normal(rng), b = normal(rng);
    const GuessPair gp(tm(random_unitary_channel(ProbVector({0.6, 0.4}),
                                                 std::vector<ComplexMatrix>{u1, u2})),
                       unitary_tm(u2));
    r.check("modified observable equals [[a,b],[b,a+2b]]",
            (modified_observable(gp, m::qubit_pair_member(a, b)) -
             m::qubit_pair_modified_display(a, b))
                .norm(),
            kExactTol);
}

void ru_degenerate(ScenarioResult &r, const Params &p) {
    const int states = as_count(p, "states");
    const auto [u1, u2] = m::qutrit_degenerate_pair();
    const ComplexMatrix w = u1.adjoint() * u2;
    r.check("W = U1^dagger U2 equals (1/3)[[2,2,-1],[2,-1,2],[-1,2,2]]",
            (w - m::qutrit_degenerate_w()).norm(), kExactTol);
    const EigGrouping g = group_eigenvalues(w);
    r.check("eigenvalues of W are {1,-1,1}", eigenvalue_mismatch(g.eigenvalues, {1.0, -1.0, 1.0}),
            kExactTol);
    std::vector<std::size_t> sizes;
    for (const auto &grp : g.groups) {
        sizes.push_back(grp.size());
    }
    std::sort(sizes.begin(), sizes.end());
    r.check_true("degeneracy classes have sizes {1,2}",
                 sizes == std::vector<std::size_t>{1, 2});
    two_unitary_common(r, u1, u2, 5, m::qutrit_degenerate_family_span(), states);
}

void pauli_irrep(ScenarioResult &r, const Params &p) {
    const int states = as_count(p, "states");
    const auto us = m::pauli_set();
    const ObservableFamily ru = ru_correctable_family(UnitaryErrorSet(us, 0));
    set_family(r, ru, 1);
    r.check("family is the identity ray",
            membership_residual(ComplexMatrix::Identity(2, 2), ru), kSpanTol);
    const ObservableFamily comm = commutant_family({m::pauli(1), m::pauli(3)});
    r.check("commutant of {X, Z} has one parameter", std::abs(double(comm.n_params() - 1)), 0.0);
    r.check("commutant equals the invariant-subspace family", family_distance(comm, ru), kSpanTol);
    const ObservableFamily comm_all = commutant_family(us);
    r.check("commutant of {I, X, Y, Z} has one parameter",
            std::abs(double(comm_all.n_params() - 1)), 0.0);

    Rng rng = derive_rng(r.seed, 17);
    const ProbVector probs(random_probabilities(4, rng));
    const GuessPair gp(tm(random_unitary_channel(probs, us)), unitary_tm(us[0]));
    const ObservableFamily direct = correctable_family(gp, options_for(r.seed, states));
    r.check("kernel route on a Pauli channel gives one parameter",
            std::abs(double(direct.n_params() - 1)), 0.0);
    r.max_delta_nd = ru_max_delta(us, 0, ru, 10, states, r.seed);
    r.check("max Delta_ND over random probabilities and states", r.max_delta_nd, kSpanTol);
}

void partial_recovery(ScenarioResult &r, const Params &p) {
    const double prob = p.at("p");
    const double mu = p.at("mu");
    const double x = p.at("x");
    if (!(prob > 0.0 && prob < 0.5) || !(mu >= 0.0 && mu <= 1.0) || !(x >= 0.0 && x <= 1.0)) {
        throw OverrideError("need 0 < p < 0.5, 0 <= mu <= 1, 0 <= x <= 1");
    }
    const KrausChannel kraus = m::bitflip_memory(prob, mu);
    const TransferMatrix guess = tm(m::bitflip_correlated(prob));
    const GuessPair gp(tm(kraus), guess);
    const ComplexMatrix b = m::observable_b();
    const ComplexMatrix rho = m::rho_x(x);
    const DeconvReport rep = evaluate(gp, b, rho);

    // independent path: Kraus sum for the noise, closed-form inverse for the guess
    ComplexMatrix noisy = ComplexMatrix::Zero(4, 4);
    for (const auto &k : kraus.kraus()) {
        noisy += k * rho * k.adjoint();
    }
    const ComplexMatrix inv = m::bitflip_correlated_inverse_closed_form(prob);
    const ComplexMatrix b_mod = devectorize(inv.adjoint() * vectorize(b), 4);
    const double ideal = (b * rho).trace().real();
    const double exp = (b * noisy).trace().real();
    const double nd = (b_mod * noisy).trace().real();

    const double cf_exp = m::partial_delta_exp_closed_form(prob, mu, x);
    const double cf_nd = m::partial_delta_nd_closed_form(prob, mu);
    r.metrics = {{"ideal", rep.ideal},
                 {"experimental", rep.experimental},
                 {"deconvolved", rep.deconvolved},
                 {"delta_exp", rep.delta_exp},
                 {"delta_nd", rep.delta_nd},
                 {"closed_form_delta_exp", cf_exp},
                 {"closed_form_delta_nd", cf_nd}};

    r.check_true("state is a density matrix", is_density_matrix(rho, 1e-12));
    r.check("simulated Delta_exp agrees with a direct Kraus simulation",
            std::abs(rep.delta_exp - std::abs(ideal - exp)), kExactTol);
    r.check("simulated Delta_ND agrees with a direct Kraus simulation",
            std::abs(rep.delta_nd - std::abs(ideal - nd)), kExactTol);
    r.check("Delta_ND from the bilinear form agrees with the trace form",
            std::abs(std::abs(deviation_bilinear(gp, b, rho)) - rep.delta_nd), kExactTol);
    r.check("Delta_exp matches p[(1-p)(1-mu)+x]", std::abs(rep.delta_exp - cf_exp), kExactTol);
    r.check("Delta_ND matches p(1-p)(1-mu)", std::abs(rep.delta_nd - cf_nd), kExactTol);
    r.check_true("Delta_ND < Delta_exp", rep.improved);

    int misses = 0;
    for (int ip = 1; ip <= 5; ++ip) {
        for (int im = 1; im <= 5; ++im) {
            for (int ix = 1; ix <= 5; ++ix) {
                const double gp_p = 0.5 * ip / 6.0;
                const double gp_mu = im / 6.0;
                const double gp_x = ix / 5.0;
                const GuessPair g(tm(m::bitflip_memory(gp_p, gp_mu)),
                                  tm(m::bitflip_correlated(gp_p)));
                misses += evaluate(g, b, m::rho_x(gp_x)).improved ? 0 : 1;
            }
        }
    }
    r.check("Delta_ND < Delta_exp on the 5x5x5 (p, mu, x) grid", double(misses), 0.0);

    ParametricChannel phi{[prob](double v) { return tm(m::bitflip_memory(prob, v)); }, 0.0, 1.0,
                          {}};
    const ObservableFamily fam = correctable_family(phi, guess, options_for(r.seed, 50));
    r.probes = fam.probes;
    set_family(r, fam, 12);
    r.max_delta_nd = fam.verified_max_delta;
    r.check_true("B lies outside the correctable family", membership_residual(b, fam) > 1e-4);
}

void equivalence_covariance(ScenarioResult &r, const Params &p) {
    const int tuples = as_count(p, "tuples");
    const int states = as_count(p, "states");
    double worst = 0.0;
    double verified = 0.0;
    int dims_e = 0;
    int dims_phi = 0;
    for (int t = 0; t < tuples; ++t) {
        const int d = 2 + (t % 2);
        Rng rng = derive_rng(r.seed, 500 + std::uint64_t(t));
        std::vector<ComplexMatrix> us;
        if ((t / 2) % 2 == 0) {
            us = {random_unitary(d, rng), random_unitary(d, rng)};
        } else {
            const ComplexMatrix v = random_unitary(d, rng);
            std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
            for (int k = 0; k < 3; ++k) {
                ComplexVector diag(d);
                for (int j = 0; j < d; ++j) {
                    diag(j) = std::polar(1.0, phase(rng));
                }
                us.push_back(v * diag.asDiagonal() * v.adjoint());
            }
        }
        const ProbVector probs(random_probabilities(int(us.size()), rng));
        const TransferMatrix phi = tm(random_unitary_channel(probs, us));
        const TransferMatrix phi_g = unitary_tm(us.back());
        const ComplexMatrix u = random_unitary(d, rng);
        const ComplexMatrix v = random_unitary(d, rng);
        const TransferMatrix gu = unitary_tm(u);
        const TransferMatrix gv = unitary_tm(v);
        const TransferMatrix e = compose(gv, compose(phi, gu));
        const TransferMatrix e_g = compose(gv, compose(phi_g, gu));

        const FamilyOptions opts = options_for(r.seed + std::uint64_t(t), states);
        const GuessPair gp_e(e, e_g);
        const ObservableFamily fam_phi = correctable_family(GuessPair(phi, phi_g), opts);
        const ObservableFamily fam_e = correctable_family(gp_e, opts);
        dims_phi += fam_phi.n_params();
        dims_e += fam_e.n_params();
        verified = std::max({verified, fam_phi.verified_max_delta, fam_e.verified_max_delta});
        for (const auto &a : fam_phi.basis) {
            worst = std::max(worst, membership_residual(u.adjoint() * a * u, fam_e));
        }
    }
    r.family_dim = dims_e;
    r.expected_family_dim = dims_phi;
    r.check("equivalent channels have equal family dimensions (summed over tuples)",
            std::abs(double(dims_e - dims_phi)), 0.0);
    r.check("U^dagger A U lies in the family of the equivalent channel", worst, kSpanTol);
    r.max_delta_nd = verified;
    r.check("max Delta_ND of every family", verified, kSpanTol);
    r.metrics["max_membership_residual"] = worst;
}

struct Entry {
    ScenarioInfo info;
    Runner run;
};

const std::vector<Entry> &entries() {
    static const std::vector<Entry> table = {
        {{"qutrit-extreme",
          "qutrit extreme channel with unknown phase phi, guess phi = 0",
          {{"states", 100}}},
         qutrit_extreme},
        {{"bitflip-memory",
          "two-qubit bit flip with partial memory, unknown mu, fully correlated guess",
          {{"p", 0.25}, {"states", 100}}},
         bitflip_memory},
        {{"ru-three-unitaries",
          "random unitary noise with three qutrit unitaries and unknown probabilities",
          {{"states", 50}}},
         ru_three_unitaries},
        {{"ru-two-qubit",
          "two-unitary qubit noise with a non-degenerate W",
          {{"states", 50}}},
         ru_two_qubit},
        {{"ru-degenerate",
          "two-unitary qutrit noise with a degenerate W",
          {{"states", 50}}},
         ru_degenerate},
        {{"pauli-irrep",
          "Pauli errors form an irreducible set; only the identity is correctable",
          {{"states", 50}}},
         pauli_irrep},
        {{"partial-recovery",
          "observable B outside the correctable family, bit flip with partial memory",
          {{"p", 0.3}, {"mu", 0.5}, {"x", 0.5}}},
         partial_recovery},
        {{"equivalence-covariance",
          "families of unitarily equivalent channel pairs map onto each other",
          {{"tuples", 20}, {"states", 20}}},
         equivalence_covariance},
    };
    return table;
}

}  // namespace

const std::vector<ScenarioInfo> &scenario_registry() {
    static const std::vector<ScenarioInfo> infos = [] {
        std::vector<ScenarioInfo> out;
        for (const auto &e : entries()) {
            out.push_back(e.info);
        }
        return out;
    }();
    return infos;
}

ScenarioResult run_scenario(const std::string &name, const std::map<std::string, double> &overrides,
                            std::uint64_t seed) {
    const auto &table = entries();
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const Entry &e) { return e.info.name == name; });
    if (it == table.end()) {
        throw UnknownScenario("unknown scenario '" + name + "'");
    }
    Params params = it->info.defaults;
    ScenarioResult r;
    r.scenario = name;
    r.description = it->info.description;
    r.seed = seed;
    for (const auto &[key, value] : overrides) {
        if (key == "seed") {
            if (value < 0.0 || value != std::floor(value)) {
                throw OverrideError("seed must be a nonnegative integer");
            }
            r.seed = std::uint64_t(value);
            continue;
        }
        if (!params.count(key)) {
            throw OverrideError("scenario '" + name + "' has no parameter '" + key + "'");
        }
        params[key] = value;
    }
    r.parameters = params;
    it->run(r, params);
    return r;
}

}  // namespace qdeconv
