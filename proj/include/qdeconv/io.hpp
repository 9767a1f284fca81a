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

// JSON encoding: complex numbers are [re, im], matrices are row-major nested arrays, and every
// document carries "schema_version".

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "qdeconv/deconvolution.hpp"
#include "qdeconv/quorum.hpp"
#include "qdeconv/scenarios.hpp"

namespace qdeconv {

inline constexpr int kSchemaVersion = 1;

struct ParseError : Error {
    using Error::Error;
};

struct SchemaError : Error {
    using Error::Error;
};

enum class ChannelKind { Kraus, RandomUnitary, Unitary, ConvexCombination };

std::string to_string(ChannelKind kind);

struct ChannelSpec {
    ChannelKind kind = ChannelKind::Kraus;
    int dim = 0;
    std::string name;
    /// kraus
    std::vector<ComplexMatrix> kraus;
    /// random_unitary; probabilities optional (uniform when absent)
    std::vector<ComplexMatrix> unitaries;
    std::optional<std::vector<double>> probabilities;
    /// unitary
    ComplexMatrix unitary;
    /// convex_combination
    std::vector<double> weights;
    std::vector<ChannelSpec> components;

    /// Validated Kraus form. Throws CptpViolation, NonUnitary or InvalidProbability.
    KrausChannel to_kraus(double tol = Tolerances{}.tol) const;
    TransferMatrix to_transfer(double tol = Tolerances{}.tol) const;
};

nlohmann::json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const nlohmann::json &j, const std::string &where = "matrix");

/// Parses and validates (schema, then CPTP). Throws ParseError, SchemaError, CptpViolation.
ChannelSpec parse_channel_spec(std::string_view text, double tol = Tolerances{}.tol);
ChannelSpec channel_spec_from_json(const nlohmann::json &j, double tol = Tolerances{}.tol);
nlohmann::json channel_spec_to_json(const ChannelSpec &spec);
std::string emit_channel_spec(const ChannelSpec &spec);

/// A single spec, or an array of specs describing the possible true channels.
std::vector<ChannelSpec> parse_channel_specs(std::string_view text, double tol = Tolerances{}.tol);

nlohmann::json family_to_json(const ObservableFamily &fam);
ObservableFamily family_from_json(const nlohmann::json &j);

nlohmann::json report_to_json(const DeconvReport &r);
DeconvReport report_from_json(const nlohmann::json &j);

nlohmann::json scenario_to_json(const ScenarioResult &r);
ScenarioResult scenario_from_json(const nlohmann::json &j);

nlohmann::json estimate_to_json(const ShotEstimate &e);

enum class Format { Json, Table };

Format parse_format(std::string_view s);

/// json: one pretty-printed document. table: aligned lines with PASS/FAIL markers.
std::string emit_report(const ScenarioResult &r, Format format);

/// A bare matrix, or an object with a "matrix" field.
ComplexMatrix parse_matrix(std::string_view text);

/// Parses JSON text, mapping syntax errors to ParseError.
nlohmann::json parse_json(std::string_view text);

}  // namespace qdeconv
