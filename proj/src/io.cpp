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

#include "qdeconv/io.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace qdeconv {

using nlohmann::json;

namespace {

[[noreturn]] void schema_fail(const std::string &where, const std::string &what) {
    throw SchemaError(where + ": " + what);
}

const json &field(const json &j, const char *key, const std::string &where) {
    if (!j.is_object()) {
        schema_fail(where, "expected an object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        schema_fail(where, std::string("missing field '") + key + "'");
    }
    return *it;
}

double number(const json &j, const std::string &where) {
    if (!j.is_number()) {
        schema_fail(where, "expected a number");
    }
    return j.get<double>();
}

// NaN and infinities have no JSON literal; they travel as null.
json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double real_from(const json &j, const std::string &where) {
    if (j.is_null()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return number(j, where);
}

int integer(const json &j, const std::string &where) {
    if (!j.is_number_integer()) {
        schema_fail(where, "expected an integer");
    }
    return j.get<int>();
}

std::string string(const json &j, const std::string &where) {
    if (!j.is_string()) {
        schema_fail(where, "expected a string");
    }
    return j.get<std::string>();
}

std::vector<double> reals(const json &j, const std::string &where) {
    if (!j.is_array()) {
        schema_fail(where, "expected an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        out.push_back(number(j[k], where + "[" + std::to_string(k) + "]"));
    }
    return out;
}

void check_version(const json &j, const std::string &where) {
    const int v = integer(field(j, "schema_version", where), where + ".schema_version");
    if (v != kSchemaVersion) {
        schema_fail(where, "unsupported schema_version " + std::to_string(v));
    }
}

std::vector<ComplexMatrix> matrices(const json &j, const std::string &where) {
    if (!j.is_array() || j.empty()) {
        schema_fail(where, "expected a nonempty array of matrices");
    }
    std::vector<ComplexMatrix> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        out.push_back(matrix_from_json(j[k], where + "[" + std::to_string(k) + "]"));
    }
    return out;
}

json matrices_to_json(const std::vector<ComplexMatrix> &ms) {
    json out = json::array();
    for (const auto &m : ms) {
        out.push_back(matrix_to_json(m));
    }
    return out;
}

void require_dim(const std::vector<ComplexMatrix> &ms, int d, const std::string &where) {
    for (std::size_t k = 0; k < ms.size(); ++k) {
        if (ms[k].rows() != d || ms[k].cols() != d) {
            schema_fail(where + "[" + std::to_string(k) + "]",
                        "expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
        }
    }
}

ChannelSpec spec_from_json(const json &j, const std::string &where, bool top_level) {
    if (top_level) {
        check_version(j, where);
    }
    ChannelSpec spec;
    spec.dim = integer(field(j, "dim", where), where + ".dim");
    if (spec.dim < 1 || spec.dim > kMaxDim) {
        schema_fail(where + ".dim", "must lie in [1, " + std::to_string(kMaxDim) + "]");
    }
    if (j.contains("name")) {
        spec.name = string(j["name"], where + ".name");
    }
    const std::string kind = string(field(j, "kind", where), where + ".kind");
    if (kind == "kraus") {
        spec.kind = ChannelKind::Kraus;
        spec.kraus = matrices(field(j, "kraus", where), where + ".kraus");
        require_dim(spec.kraus, spec.dim, where + ".kraus");
    } else if (kind == "random_unitary") {
        spec.kind = ChannelKind::RandomUnitary;
        spec.unitaries = matrices(field(j, "unitaries", where), where + ".unitaries");
        require_dim(spec.unitaries, spec.dim, where + ".unitaries");
        if (j.contains("probabilities")) {
            spec.probabilities = reals(j["probabilities"], where + ".probabilities");
            if (spec.probabilities->size() != spec.unitaries.size()) {
                schema_fail(where + ".probabilities", "length differs from unitaries");
            }
        }
    } else if (kind == "unitary") {
        spec.kind = ChannelKind::Unitary;
        spec.unitary = matrix_from_json(field(j, "unitary", where), where + ".unitary");
        require_dim({spec.unitary}, spec.dim, where + ".unitary");
    } else if (kind == "convex_combination") {
        spec.kind = ChannelKind::ConvexCombination;
        spec.weights = reals(field(j, "weights", where), where + ".weights");
        const json &comps = field(j, "components", where);
        if (!comps.is_array() || comps.empty()) {
            schema_fail(where + ".components", "expected a nonempty array");
        }
        if (comps.size() != spec.weights.size()) {
            schema_fail(where + ".weights", "length differs from components");
        }
        for (std::size_t k = 0; k < comps.size(); ++k) {
            const std::string sub = where + ".components[" + std::to_string(k) + "]";
            spec.components.push_back(spec_from_json(comps[k], sub, false));
            if (spec.components.back().dim != spec.dim) {
                schema_fail(sub + ".dim", "differs from the enclosing dim");
            }
        }
    } else {
        schema_fail(where + ".kind", "unknown kind '" + kind + "'");
    }
    return spec;
}

}  // namespace

std::string to_string(ChannelKind kind) {
    switch (kind) {
    case ChannelKind::Kraus:
        return "kraus";
    case ChannelKind::RandomUnitary:
        return "random_unitary";
    case ChannelKind::Unitary:
        return "unitary";
    case ChannelKind::ConvexCombination:
        return "convex_combination";
    }
    return "kraus";
}

KrausChannel ChannelSpec::to_kraus(double tol) const {
    switch (kind) {
    case ChannelKind::Kraus:
        return KrausChannel(kraus, tol);
    case ChannelKind::Unitary:
        return unitary_channel(unitary, tol);
    case ChannelKind::RandomUnitary: {
        std::vector<double> p = probabilities.value_or(
            std::vector<double>(unitaries.size(), 1.0 / double(unitaries.size())));
        return random_unitary_channel(ProbVector(std::move(p), tol), unitaries, tol);
    }
    case ChannelKind::ConvexCombination: {
        std::vector<KrausChannel> parts;
        for (const auto &c : components) {
            parts.push_back(c.to_kraus(tol));
        }
        return convex_combination(ProbVector(weights, tol), parts);
    }
    }
    throw SchemaError("unknown channel kind");
}

TransferMatrix ChannelSpec::to_transfer(double tol) const {
    return transfer_from_kraus(to_kraus(tol));
}

json matrix_to_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json &j, const std::string &where) {
    if (!j.is_array() || j.empty()) {
        schema_fail(where, "expected a nonempty array of rows");
    }
    const std::size_t n_rows = j.size();
    if (!j[0].is_array() || j[0].empty()) {
        schema_fail(where + "[0]", "expected a nonempty row");
    }
    const std::size_t n_cols = j[0].size();
    ComplexMatrix m(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_cols));
    for (std::size_t r = 0; r < n_rows; ++r) {
        const std::string rw = where + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != n_cols) {
            schema_fail(rw, "rows must all have " + std::to_string(n_cols) + " entries");
        }
        for (std::size_t c = 0; c < n_cols; ++c) {
            const json &e = j[r][c];
            const std::string ew = rw + "[" + std::to_string(c) + "]";
            if (!e.is_array() || e.size() != 2) {
                schema_fail(ew, "expected [re, im]");
            }
            m(Eigen::Index(r), Eigen::Index(c)) = Complex(number(e[0], ew), number(e[1], ew));
        }
    }
    return m;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

ChannelSpec channel_spec_from_json(const json &j, double tol) {
    ChannelSpec spec = spec_from_json(j, "channel", true);
    const KrausChannel ch = spec.to_kraus(tol);
    const CptpReport rep = is_cptp(ch, tol);
    if (!rep.completely_positive) {
        throw CptpViolation("channel '" + spec.name +
                            "' is not completely positive: Choi min eigenvalue " +
                            std::to_string(rep.choi_min_eigenvalue));
    }
    return spec;
}

ChannelSpec parse_channel_spec(std::string_view text, double tol) {
    return channel_spec_from_json(parse_json(text), tol);
}

std::vector<ChannelSpec> parse_channel_specs(std::string_view text, double tol) {
    const json j = parse_json(text);
    std::vector<ChannelSpec> out;
    if (j.is_array()) {
        if (j.empty()) {
            throw SchemaError("channel list: expected at least one spec");
        }
        for (const auto &e : j) {
            out.push_back(channel_spec_from_json(e, tol));
        }
    } else {
        out.push_back(channel_spec_from_json(j, tol));
    }
    for (const auto &s : out) {
        if (s.dim != out.front().dim) {
            throw SchemaError("channel list: specs differ in dim");
        }
    }
    return out;
}

json channel_spec_to_json(const ChannelSpec &spec) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = to_string(spec.kind);
    j["dim"] = spec.dim;
    j["name"] = spec.name;
    switch (spec.kind) {
    case ChannelKind::Kraus:
        j["kraus"] = matrices_to_json(spec.kraus);
        break;
    case ChannelKind::RandomUnitary:
        j["unitaries"] = matrices_to_json(spec.unitaries);
        if (spec.probabilities) {
            j["probabilities"] = *spec.probabilities;
        }
        break;
    case ChannelKind::Unitary:
        j["unitary"] = matrix_to_json(spec.unitary);
        break;
    case ChannelKind::ConvexCombination: {
        j["weights"] = spec.weights;
        json comps = json::array();
        for (const auto &c : spec.components) {
            json cj = channel_spec_to_json(c);
            cj.erase("schema_version");
            comps.push_back(std::move(cj));
        }
        j["components"] = std::move(comps);
        break;
    }
    }
    return j;
}

std::string emit_channel_spec(const ChannelSpec &spec) { return channel_spec_to_json(spec).dump(2); }

json family_to_json(const ObservableFamily &fam) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["dim"] = fam.dim;
    j["n_params"] = fam.n_params();
    j["basis"] = matrices_to_json(fam.basis);
    j["probes"] = fam.probes;
    j["verified_max_delta"] = real_or_null(fam.verified_max_delta);
    return j;
}

ObservableFamily family_from_json(const json &j) {
    const std::string where = "family";
    check_version(j, where);
    ObservableFamily fam;
    fam.dim = integer(field(j, "dim", where), where + ".dim");
    const json &basis = field(j, "basis", where);
    if (!basis.is_array()) {
        schema_fail(where + ".basis", "expected an array");
    }
    for (std::size_t k = 0; k < basis.size(); ++k) {
        fam.basis.push_back(matrix_from_json(basis[k], where + ".basis[" + std::to_string(k) + "]"));
    }
    require_dim(fam.basis, fam.dim, where + ".basis");
    const int n = integer(field(j, "n_params", where), where + ".n_params");
    if (n != fam.n_params()) {
        schema_fail(where + ".n_params", "does not match the basis length");
    }
    if (j.contains("probes")) {
        fam.probes = reals(j["probes"], where + ".probes");
    }
    if (j.contains("verified_max_delta")) {
        fam.verified_max_delta = real_from(j["verified_max_delta"], where + ".verified_max_delta");
    }
    return fam;
}

json report_to_json(const DeconvReport &r) {
    return json{{"schema_version", kSchemaVersion}, {"ideal", r.ideal},
                {"experimental", r.experimental},   {"deconvolved", r.deconvolved},
                {"delta_exp", r.delta_exp},         {"delta_nd", r.delta_nd},
                {"improved", r.improved},           {"tie", r.tie}};
}

DeconvReport report_from_json(const json &j) {
    const std::string where = "report";
    check_version(j, where);
    DeconvReport r;
    r.ideal = number(field(j, "ideal", where), where);
    r.experimental = number(field(j, "experimental", where), where);
    r.deconvolved = number(field(j, "deconvolved", where), where);
    r.delta_exp = number(field(j, "delta_exp", where), where);
    r.delta_nd = number(field(j, "delta_nd", where), where);
    const json &imp = field(j, "improved", where);
    const json &tie = field(j, "tie", where);
    if (!imp.is_boolean() || !tie.is_boolean()) {
        schema_fail(where, "improved and tie must be booleans");
    }
    r.improved = imp.get<bool>();
    r.tie = tie.get<bool>();
    return r;
}

json scenario_to_json(const ScenarioResult &r) {
    json checks = json::array();
    for (const auto &c : r.checks) {
        checks.push_back({{"label", c.label},
                          {"passed", c.passed},
                          {"residual", real_or_null(c.residual)},
                          {"tolerance", real_or_null(c.tolerance)}});
    }
    json metrics = json::object();
    for (const auto &[k, v] : r.metrics) {
        metrics[k] = real_or_null(v);
    }
    return json{{"schema_version", kSchemaVersion},
                {"scenario", r.scenario},
                {"description", r.description},
                {"seed", r.seed},
                {"parameters", r.parameters},
                {"probes", r.probes},
                {"metrics", metrics},
                {"family_dim", r.family_dim},
                {"expected_family_dim", r.expected_family_dim},
                {"max_delta_nd", real_or_null(r.max_delta_nd)},
                {"passed", r.passed()},
                {"checks", checks}};
}

ScenarioResult scenario_from_json(const json &j) {
    const std::string where = "scenario";
    check_version(j, where);
    ScenarioResult r;
    r.scenario = string(field(j, "scenario", where), where + ".scenario");
    r.description = string(field(j, "description", where), where + ".description");
    const json &seed = field(j, "seed", where);
    if (!seed.is_number_unsigned()) {
        schema_fail(where + ".seed", "expected a nonnegative integer");
    }
    r.seed = seed.get<std::uint64_t>();
    const json &params = field(j, "parameters", where);
    if (!params.is_object()) {
        schema_fail(where + ".parameters", "expected an object");
    }
    for (const auto &[k, v] : params.items()) {
        r.parameters[k] = number(v, where + ".parameters." + k);
    }
    r.probes = reals(field(j, "probes", where), where + ".probes");
    if (j.contains("metrics")) {
        for (const auto &[k, v] : j["metrics"].items()) {
            r.metrics[k] = real_from(v, where + ".metrics." + k);
        }
    }
    r.family_dim = integer(field(j, "family_dim", where), where + ".family_dim");
    r.expected_family_dim =
        integer(field(j, "expected_family_dim", where), where + ".expected_family_dim");
    r.max_delta_nd = real_from(field(j, "max_delta_nd", where), where + ".max_delta_nd");
    const json &checks = field(j, "checks", where);
    if (!checks.is_array()) {
        schema_fail(where + ".checks", "expected an array");
    }
    for (const auto &c : checks) {
        Check chk;
        chk.label = string(field(c, "label", where + ".checks"), where + ".checks.label");
        const json &passed = field(c, "passed", where + ".checks");
        if (!passed.is_boolean()) {
            schema_fail(where + ".checks.passed", "expected a boolean");
        }
        chk.passed = passed.get<bool>();
        chk.residual = real_from(field(c, "residual", where + ".checks"), where);
        chk.tolerance = real_from(field(c, "tolerance", where + ".checks"), where);
        r.checks.push_back(std::move(chk));
    }
    return r;
}

json estimate_to_json(const ShotEstimate &e) {
    return json{{"schema_version", kSchemaVersion},
                {"mean", e.mean},
                {"shots", e.shots},
                {"std_error", e.std_error},
                {"seed", e.seed}};
}

Format parse_format(std::string_view s) {
    if (s == "json") {
        return Format::Json;
    }
    if (s == "table") {
        return Format::Table;
    }
    throw ParseError("unknown format '" + std::string(s) + "' (expected json or table)");
}

std::string emit_report(const ScenarioResult &r, Format format) {
    if (format == Format::Json) {
        return scenario_to_json(r).dump(2) + "\n";
    }
    std::ostringstream out;
    out << "scenario  " << r.scenario << "\n";
    out << "          " << r.description << "\n";
    out << "seed      " << r.seed << "\n";
    for (const auto &[k, v] : r.parameters) {
        out << "param     " << k << " = " << v << "\n";
    }
    if (!r.probes.empty()) {
        out << "probes   ";
        for (double p : r.probes) {
            out << " " << std::setprecision(6) << p;
        }
        out << "\n";
    }
    for (const auto &[k, v] : r.metrics) {
        out << "metric    " << k << " = " << std::setprecision(12) << v << "\n";
    }
    out << "family    " << r.family_dim << " (expected " << r.expected_family_dim << ")\n";
    out << "max dND   " << std::setprecision(3) << std::scientific << r.max_delta_nd
        << std::defaultfloat << "\n";
    for (const auto &c : r.checks) {
        out << (c.passed ? "[PASS] " : "[FAIL] ") << c.label << "  (residual "
            << std::setprecision(3) << std::scientific << c.residual << " <= " << c.tolerance
            << std::defaultfloat << ")\n";
    }
    out << (r.passed() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

ComplexMatrix parse_matrix(std::string_view text) {
    const json j = parse_json(text);
    if (j.is_object()) {
        return matrix_from_json(field(j, "matrix", "matrix file"), "matrix");
    }
    return matrix_from_json(j, "matrix");
}

}  // namespace qdeconv
