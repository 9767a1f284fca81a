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

// qdeconv: correctable observable families, verification, shot estimates and example runs.
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qdeconv/io.hpp"
#include "qdeconv/random_unitary.hpp"

namespace {

using namespace qdeconv;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;

struct UsageError : Error {
    using Error::Error;
};

struct Globals {
    double tol = Tolerances{}.tol;
    double kernel_tol = Tolerances{}.kernel_rel_tol;
    std::uint64_t seed = kDefaultSeed;
    bool seed_given = false;
    std::string format = "json";
};

std::string read_input(const std::string &path, bool &stdin_used) {
    if (path == "-") {
        if (stdin_used) {
            throw UsageError("stdin ('-') can be used for one input only");
        }
        stdin_used = true;
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open '" + path + "'");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint64_t resolve_seed(const Globals &g) {
    if (g.seed_given) {
        return g.seed;
    }
    if (const char *env = std::getenv("QDECONV_SEED")) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used != std::string(env).size()) {
                throw std::invalid_argument(env);
            }
            return v;
        } catch (const std::exception &) {
            throw UsageError(std::string("QDECONV_SEED is not an unsigned integer: ") + env);
        }
    }
    return kDefaultSeed;
}

Format format_of(const Globals &g) { return parse_format(g.format); }

std::vector<TransferMatrix> transfers(const std::vector<ChannelSpec> &specs, double tol) {
    std::vector<TransferMatrix> out;
    for (const auto &s : specs) {
        out.push_back(s.to_transfer(tol));
    }
    return out;
}

TransferMatrix single_transfer(const std::string &text, double tol, const char *what) {
    const auto specs = parse_channel_specs(text, tol);
    if (specs.size() != 1) {
        throw UsageError(std::string(what) + " must be a single channel spec");
    }
    return specs.front().to_transfer(tol);
}

void print_matrix(std::ostream &out, const ComplexMatrix &m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out << "    ";
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const Complex z = m(r, c);
            out << std::setw(10) << std::fixed << std::setprecision(5) << z.real()
                << (z.imag() < 0 ? "-" : "+") << std::setw(8) << std::abs(z.imag()) << "i";
        }
        out << "\n";
    }
    out << std::defaultfloat;
}

void print_family(const ObservableFamily &fam, Format f) {
    if (f == Format::Json) {
        std::cout << family_to_json(fam).dump(2) << "\n";
        return;
    }
    std::cout << "dim        " << fam.dim << "\n";
    std::cout << "n_params   " << fam.n_params() << "\n";
    std::cout << "max dND    " << fam.verified_max_delta << "\n";
    for (std::size_t k = 0; k < fam.basis.size(); ++k) {
        std::cout << "basis[" << k << "]\n";
        print_matrix(std::cout, fam.basis[k]);
    }
}

void print_kv(const json &j, Format f) {
    if (f == Format::Json) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto &[k, v] : j.items()) {
        std::cout << std::left << std::setw(20) << k << v.dump() << "\n";
    }
}

std::map<std::string, double> parse_sets(const std::vector<std::string> &sets) {
    std::map<std::string, double> out;
    for (const auto &s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw UsageError("--set expects key=value, got '" + s + "'");
        }
        const std::string key = s.substr(0, eq);
        const std::string val = s.substr(eq + 1);
        try {
            std::size_t used = 0;
            const double v = std::stod(val, &used);
            if (used != val.size()) {
                throw std::invalid_argument(val);
            }
            out[key] = v;
        } catch (const std::exception &) {
            throw OverrideError("--set " + key + ": '" + val + "' is not a number");
        }
    }
    return out;
}

int run(int argc, char **argv) {
    CLI::App app{"Exact noise deconvolution with partial knowledge of the noise"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--tol", g.tol, "tolerance for CPTP, unitarity and Hermiticity checks")
        ->check(CLI::PositiveNumber);
    app.add_option("--kernel-tol", g.kernel_tol, "relative singular-value cutoff for kernels")
        ->check(CLI::PositiveNumber);
    auto *seed_opt = app.add_option("--seed", g.seed, "RNG seed (overrides QDECONV_SEED)");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"json", "table"}));

    // deconvolve
    auto *deconv = app.add_subcommand("deconvolve", "correctable observable family for a channel "
                                                    "(or a list of possible channels) and a guess");
    std::string d_channel, d_guess;
    int d_states = 100;
    deconv->add_option("channel", d_channel, "true channel spec, or JSON array of specs ('-' = stdin)")
        ->required();
    deconv->add_option("guess", d_guess, "guess channel spec")->required();
    deconv->add_option("--states", d_states, "random states used for self-verification")
        ->check(CLI::PositiveNumber);

    // verify
    auto *verify = app.add_subcommand("verify", "max Delta_ND of a family over seeded random states");
    std::string v_family, v_channel, v_guess;
    int v_states = 100;
    double v_threshold = 1e-9;
    verify->add_option("family", v_family, "observable family JSON")->required();
    verify->add_option("channel", v_channel, "true channel spec or array of specs")->required();
    verify->add_option("guess", v_guess, "guess channel spec")->required();
    verify->add_option("--states", v_states, "number of random states")->check(CLI::PositiveNumber);
    verify->add_option("--threshold", v_threshold, "largest acceptable Delta_ND")
        ->check(CLI::NonNegativeNumber);

    // evaluate
    auto *evaluate_cmd =
        app.add_subcommand("evaluate", "ideal, noisy and deconvolved expectation of one observable");
    std::string e_channel, e_guess, e_obs, e_state;
    evaluate_cmd->add_option("channel", e_channel, "true channel spec")->required();
    evaluate_cmd->add_option("guess", e_guess, "guess channel spec")->required();
    evaluate_cmd->add_option("observable", e_obs, "observable matrix JSON")->required();
    evaluate_cmd->add_option("state", e_state, "density matrix JSON")->required();

    // estimate
    auto *estimate = app.add_subcommand("estimate", "finite-shot deconvolved estimate via a quorum");
    std::string s_channel, s_guess, s_obs, s_state, s_quorum = "gellmann";
    long long s_shots = 10000;
    int s_quorum_dim = 0;
    estimate->add_option("channel", s_channel, "true channel spec")->required();
    estimate->add_option("guess", s_guess, "guess channel spec")->required();
    estimate->add_option("observable", s_obs, "observable matrix JSON")->required();
    estimate->add_option("state", s_state, "density matrix JSON")->required();
    estimate->add_option("--shots", s_shots, "shots per quorum element (0 = exact traces)")
        ->check(CLI::NonNegativeNumber);
    estimate->add_option("--quorum-dim", s_quorum_dim, "quorum dimension (defaults to the channel's)")
        ->check(CLI::PositiveNumber);
    estimate->add_option("--quorum", s_quorum, "quorum basis")
        ->check(CLI::IsMember({"gellmann", "pauli"}));

    // examples
    auto *examples = app.add_subcommand("examples", "registered example scenarios");
    examples->require_subcommand(1);
    examples->add_subcommand("list", "list scenarios and their parameters");
    auto *ex_run = examples->add_subcommand("run", "run a scenario");
    std::string x_name;
    std::vector<std::string> x_sets;
    ex_run->add_option("name", x_name, "scenario name")->required();
    ex_run->add_option("--set", x_sets, "parameter override key=value (repeatable)");

    // sweep
    auto *sweep = app.add_subcommand("sweep", "rank candidate guesses by family size");
    std::string w_channel, w_candidates;
    int w_states = 50;
    sweep->add_option("channel", w_channel, "true channel spec")->required();
    sweep->add_option("candidates", w_candidates, "JSON array of candidate guess specs")->required();
    sweep->add_option("--states", w_states, "random states used for self-verification")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    g.seed_given = seed_opt->count() > 0;
    const std::uint64_t seed = resolve_seed(g);
    const Format fmt = format_of(g);
    bool stdin_used = false;

    if (*deconv) {
        const auto phis = transfers(parse_channel_specs(read_input(d_channel, stdin_used), g.tol), g.tol);
        const TransferMatrix guess = single_transfer(read_input(d_guess, stdin_used), g.tol, "guess");
        FamilyOptions opts;
        opts.kernel_rel_tol = g.kernel_tol;
        opts.seed = seed;
        opts.verify_states = d_states;
        const ObservableFamily fam = phis.size() == 1
                                         ? correctable_family(GuessPair(phis.front(), guess), opts)
                                         : correctable_family(phis, guess, opts);
        print_family(fam, fmt);
        return kExitOk;
    }
    if (*verify) {
        const ObservableFamily fam = family_from_json(parse_json(read_input(v_family, stdin_used)));
        const auto phis = transfers(parse_channel_specs(read_input(v_channel, stdin_used), g.tol), g.tol);
        const TransferMatrix guess = single_transfer(read_input(v_guess, stdin_used), g.tol, "guess");
        double worst = 0.0;
        for (std::size_t k = 0; k < phis.size(); ++k) {
            worst = std::max(worst, verify_family(GuessPair(phis[k], guess), fam, v_states, seed + k));
        }
        const bool ok = worst <= v_threshold;
        print_kv(json{{"schema_version", kSchemaVersion},
                      {"n_params", fam.n_params()},
                      {"n_states", v_states},
                      {"seed", seed},
                      {"max_delta_nd", worst},
                      {"threshold", v_threshold},
                      {"passed", ok}},
                 fmt);
        return ok ? kExitOk : kExitCheck;
    }
    if (*evaluate_cmd) {
        const TransferMatrix phi = single_transfer(read_input(e_channel, stdin_used), g.tol, "channel");
        const TransferMatrix guess = single_transfer(read_input(e_guess, stdin_used), g.tol, "guess");
        const ComplexMatrix a = parse_matrix(read_input(e_obs, stdin_used));
        const ComplexMatrix rho = parse_matrix(read_input(e_state, stdin_used));
        if (!is_hermitian(a, g.tol)) {
            throw InvalidState("observable is not Hermitian");
        }
        if (!is_density_matrix(rho, g.tol)) {
            throw InvalidState("state is not a density matrix");
        }
        print_kv(report_to_json(evaluate(GuessPair(phi, guess), a, rho)), fmt);
        return kExitOk;
    }
    if (*estimate) {
        const TransferMatrix phi = single_transfer(read_input(s_channel, stdin_used), g.tol, "channel");
        const TransferMatrix guess = single_transfer(read_input(s_guess, stdin_used), g.tol, "guess");
        const ComplexMatrix a = parse_matrix(read_input(s_obs, stdin_used));
        const ComplexMatrix rho = parse_matrix(read_input(s_state, stdin_used));
        if (s_quorum_dim != 0 && s_quorum_dim != phi.dim) {
            throw UsageError("--quorum-dim " + std::to_string(s_quorum_dim) +
                             " does not match the channel dimension " + std::to_string(phi.dim));
        }
        if (!is_hermitian(a, g.tol)) {
            throw InvalidState("observable is not Hermitian");
        }
        const QuorumBasis qb = make_quorum(
            phi.dim, s_quorum == "pauli" ? QuorumKind::PauliProduct : QuorumKind::GellMann);
        const GuessPair gp(phi, guess);
        const ShotEstimate est = deconvolved_estimate(gp, a, rho, qb, s_shots, seed);
        const DeconvReport rep = evaluate(gp, a, rho);
        json out = estimate_to_json(est);
        out["quorum"] = s_quorum;
        out["exact_deconvolved"] = rep.deconvolved;
        out["ideal"] = rep.ideal;
        out["z_score"] = est.std_error > 0.0 ? (est.mean - rep.deconvolved) / est.std_error : 0.0;
        print_kv(out, fmt);
        return kExitOk;
    }
    if (*examples) {
        if (examples->got_subcommand("list")) {
            json list = json::array();
            for (const auto &info : scenario_registry()) {
                list.push_back({{"name", info.name},
                                {"description", info.description},
                                {"parameters", info.defaults}});
            }
            if (fmt == Format::Json) {
                std::cout << list.dump(2) << "\n";
            } else {
                for (const auto &info : scenario_registry()) {
                    std::cout << std::left << std::setw(24) << info.name << info.description << "\n";
                }
            }
            return kExitOk;
        }
        const ScenarioResult r = run_scenario(x_name, parse_sets(x_sets), seed);
        std::cout << emit_report(r, fmt);
        return r.passed() ? kExitOk : kExitCheck;
    }
    if (*sweep) {
        const TransferMatrix phi = single_transfer(read_input(w_channel, stdin_used), g.tol, "channel");
        const json cands = parse_json(read_input(w_candidates, stdin_used));
        if (!cands.is_array() || cands.empty()) {
            throw SchemaError("candidates: expected a nonempty JSON array of channel specs");
        }
        std::vector<TransferMatrix> guesses;
        for (const auto &c : cands) {
            guesses.push_back(channel_spec_from_json(c, g.tol).to_transfer(g.tol));
        }
        FamilyOptions opts;
        opts.kernel_rel_tol = g.kernel_tol;
        opts.seed = seed;
        opts.verify_states = w_states;
        json ranking = json::array();
        for (const auto &e : guess_sweep(phi, guesses, opts)) {
            ranking.push_back({{"index", e.index}, {"n_params", e.n_params}});
        }
        if (fmt == Format::Json) {
            std::cout << json{{"schema_version", kSchemaVersion}, {"ranking", ranking}}.dump(2)
                      << "\n";
        } else {
            for (const auto &e : ranking) {
                std::cout << "candidate " << e["index"] << "  n_params " << e["n_params"] << "\n";
            }
        }
        return kExitOk;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const qdeconv::VerificationFailed &e) {
        std::cerr << "qdeconv: check failed: " << e.what() << "\n";
        return kExitCheck;
    } catch (const std::exception &e) {
        std::cerr << "qdeconv: error: " << e.what() << "\n";
        return kExitUsage;
    }
}
