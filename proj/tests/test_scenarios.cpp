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

#include <gtest/gtest.h>

#include <set>

#include "qdeconv/io.hpp"
#include "qdeconv/scenarios.hpp"

namespace qdeconv {
namespace {

const std::vector<std::string> kNames = {"qutrit-extreme",     "bitflip-memory", "ru-three-unitaries",
                                         "ru-two-qubit",       "ru-degenerate",  "pauli-irrep",
                                         "partial-recovery",   "equivalence-covariance"};

TEST(Registry, HasEveryScenario) {
    std::set<std::string> names;
    for (const auto &info : scenario_registry()) {
        names.insert(info.name);
        EXPECT_FALSE(info.description.empty());
    }
    EXPECT_EQ(names, std::set<std::string>(kNames.begin(), kNames.end()));
}

class EveryScenario : public ::testing::TestWithParam<std::string> {};

TEST_P(EveryScenario, PassesAllChecks) {
    const ScenarioResult r = run_scenario(GetParam());
    for (const Check &c : r.checks) {
        EXPECT_TRUE(c.passed) << c.label << ": residual " << c.residual << " > " << c.tolerance;
    }
    EXPECT_EQ(r.family_dim, r.expected_family_dim);
    EXPECT_LE(r.max_delta_nd, 1e-9);
}

// property: deterministic given the seed
TEST_P(EveryScenario, Deterministic) {
    const auto a = emit_report(run_scenario(GetParam(), {}, 99), Format::Json);
    const auto b = emit_report(run_scenario(GetParam(), {}, 99), Format::Json);
    EXPECT_EQ(a, b);
}

INSTANTIATE_TEST_SUITE_P(Scenarios, EveryScenario, ::testing::ValuesIn(kNames),
                         [](const auto &info) {
                             std::string s = info.param;
                             for (char &c : s) if (c == '-') c = '_';
                             return s;
                         });

TEST(RunScenario, OverridesAndErrors) {
    EXPECT_THROW(run_scenario("nope"), UnknownScenario);
    EXPECT_THROW(run_scenario("qutrit-extreme", {{"bogus", 1.0}}), OverrideError);
    EXPECT_THROW(run_scenario("qutrit-extreme", {{"states", 2.5}}), OverrideError);
    EXPECT_THROW(run_scenario("bitflip-memory", {{"p", 0.5}}), OverrideError);
    const ScenarioResult r = run_scenario("qutrit-extreme", {{"seed", 5.0}, {"states", 10.0}});
    EXPECT_EQ(r.seed, 5u);
    EXPECT_EQ(r.parameters.at("states"), 10.0);
}

TEST(RunScenario, PartialRecoveryImprovesOnGrid) {
    const ScenarioResult r = run_scenario("partial-recovery");
    bool found = false;
    for (const Check &c : r.checks) {
        if (c.label.find("grid") != std::string::npos) {
            found = true;
            EXPECT_TRUE(c.passed) << c.label;
        }
    }
    EXPECT_TRUE(found);
    EXPECT_NEAR(r.metrics.at("closed_form_delta_exp"), 0.255, 1e-12);
    EXPECT_NEAR(r.metrics.at("closed_form_delta_nd"), 0.105, 1e-12);
}

}  // namespace
}  // namespace qdeconv
