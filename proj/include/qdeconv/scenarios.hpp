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
#include <map>
#include <string>
#include <vector>

#include "qdeconv/random.hpp"

namespace qdeconv {

struct UnknownScenario : Error {
    using Error::Error;
};

struct OverrideError : Error {
    using Error::Error;
};

struct Check {
    std::string label;
    bool passed = false;
    double residual = 0.0;
    double tolerance = 0.0;
};

struct ScenarioResult {
    std::string scenario;
    std::string description;
    std::uint64_t seed = 0;
    std::map<std::string, double> parameters;
    /// Parameter values the family was intersected over.
    std::vector<double> probes;
    /// Reported numbers that are not pass/fail checks (expectation values, closed forms).
    std::map<std::string, double> metrics;
    int family_dim = 0;
    int expected_family_dim = 0;
    double max_delta_nd = 0.0;
    std::vector<Check> checks;

    bool passed() const;
    /// Adds a check that passes iff residual <= tolerance (NaN fails).
    void check(std::string label, double residual, double tolerance);
    /// Boolean check recorded as residual 0 (true) or 1 (false) against tolerance 0.
    void check_true(std::string label, bool ok);
};

struct ScenarioInfo {
    std::string name;
    std::string description;
    /// Overridable numeric parameters with their defaults.
    std::map<std::string, double> defaults;
};

const std::vector<ScenarioInfo> &scenario_registry();

/// Runs a registered scenario. Overrides must name known parameters; "seed" is always allowed.
ScenarioResult run_scenario(const std::string &name,
                            const std::map<std::string, double> &overrides = {},
                            std::uint64_t seed = kDefaultSeed);

}  // namespace qdeconv
