// Copyright 2026 The thermalcat Authors
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

#include <cmath>
#include <numbers>
#include <string>

#include "json.hpp"
#include "thermalcat/thermalcat.h"

namespace {

using Json = nlohmann::json;

struct StateGuard {
    tcat_state *p = nullptr;
    ~StateGuard() { tcat_state_free(p); }
};

std::string report(const char *command, const char *config, tcat_status expected = TCAT_OK) {
    char *out = nullptr;
    EXPECT_EQ(tcat_run_report(command, config, &out), expected) << tcat_last_error();
    std::string s = out ? out : "";
    tcat_string_free(out);
    return s;
}

TEST(CApi, BuildsAndEvaluatesStates) {
    StateGuard s;
    ASSERT_EQ(tcat_thermal_superposition(100.0, 0.0, 0.0, std::numbers::pi, -1, &s.p), TCAT_OK);
    int modes = 0;
    ASSERT_EQ(tcat_state_modes(s.p, &modes), TCAT_OK);
    EXPECT_EQ(modes, 1);
    const double origin[] = {0.0, 0.0};
    double w = 0.0;
    ASSERT_EQ(tcat_wigner(s.p, origin, 2, &w), TCAT_OK);
    EXPECT_NEAR(w, -2.0 / std::numbers::pi, 1e-10);
    EXPECT_EQ(tcat_wigner(s.p, origin, 4, &w), TCAT_DIMENSION_MISMATCH);
    EXPECT_STRNE(tcat_last_error(), "");
}

TEST(CApi, ReportsErrorsWithCodes) {
    StateGuard s;
    EXPECT_EQ(tcat_displaced_thermal(0.5, 0.0, 0.0, &s.p), TCAT_INVALID_ARGUMENT);
    EXPECT_EQ(s.p, nullptr);
    EXPECT_NE(std::string(tcat_last_error()).find("V"), std::string::npos);
    EXPECT_EQ(tcat_thermal_superposition(1.0, 0.0, 0.0, std::numbers::pi, -1, &s.p), TCAT_IMPOSSIBLE_OUTCOME);
    EXPECT_EQ(tcat_state_modes(nullptr, nullptr), TCAT_INVALID_ARGUMENT);
    EXPECT_STREQ(tcat_status_name(TCAT_NUMERICAL_FAILURE), "numerical_failure");
}

TEST(CApi, JsonRoundTripPreservesState) {
    StateGuard a, b;
    ASSERT_EQ(tcat_thermal_bell(TCAT_PSI_MINUS, 3.0, 1.0, 0.2, &a.p), TCAT_OK);
    char *text = nullptr;
    ASSERT_EQ(tcat_state_to_json(a.p, &text), TCAT_OK);
    ASSERT_EQ(tcat_state_from_json(text, &b.p), TCAT_OK);
    tcat_string_free(text);
    const double point[] = {0.3, -0.1, -0.5, 0.4};
    double wa = 0.0, wb = 0.0, overlap = 0.0, purity = 0.0;
    ASSERT_EQ(tcat_wigner(a.p, point, 4, &wa), TCAT_OK);
    ASSERT_EQ(tcat_wigner(b.p, point, 4, &wb), TCAT_OK);
    EXPECT_EQ(wa, wb);
    ASSERT_EQ(tcat_hs_overlap(a.p, b.p, &overlap), TCAT_OK);
    ASSERT_EQ(tcat_purity(a.p, &purity), TCAT_OK);
    EXPECT_NEAR(overlap, purity, 1e-14);

    StateGuard bad;
    EXPECT_EQ(tcat_state_from_json("{\"format_version\": 1}", &bad.p), TCAT_INVALID_ARGUMENT);
    EXPECT_EQ(tcat_state_from_json("not json", &bad.p), TCAT_INVALID_ARGUMENT);
}

TEST(CApi, MarginalAgreesWithWignerIntegral) {
    StateGuard s;
    ASSERT_EQ(tcat_displaced_thermal(2.0, 1.0, 0.0, &s.p), TCAT_OK);
    const double x[] = {0.0, 1.0};
    double p[2];
    ASSERT_EQ(tcat_marginal(s.p, 0, 0.0, TCAT_QUADRATURE_REAL_PART, x, 2, p), TCAT_OK);
    // Re(alpha) of a thermal state: Gaussian with variance V/4 centred on d.
    const double var = 0.5;
    EXPECT_NEAR(p[1], 1.0 / std::sqrt(2.0 * std::numbers::pi * var), 1e-13);
    EXPECT_NEAR(p[0], std::exp(-1.0 / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var), 1e-13);
}

TEST(CApi, ParsesSymbolicAngles) {
    double v = 0.0;
    ASSERT_EQ(tcat_parse_angle("pi/1000", &v), TCAT_OK);
    EXPECT_DOUBLE_EQ(v, std::numbers::pi / 1000.0);
    ASSERT_EQ(tcat_parse_angle("-3pi/4", &v), TCAT_OK);
    EXPECT_DOUBLE_EQ(v, -0.75 * std::numbers::pi);
    ASSERT_EQ(tcat_parse_angle("2*pi", &v), TCAT_OK);
    EXPECT_DOUBLE_EQ(v, 2.0 * std::numbers::pi);
    ASSERT_EQ(tcat_parse_angle("0.25", &v), TCAT_OK);
    EXPECT_DOUBLE_EQ(v, 0.25);
    EXPECT_EQ(tcat_parse_angle("pie", &v), TCAT_INVALID_ARGUMENT);
    EXPECT_EQ(tcat_parse_angle("pi/0", &v), TCAT_INVALID_ARGUMENT);
}

TEST(CApi, ReportsAreDeterministicAndEchoParameters) {
    const std::string a = report("visibility", R"({"V": 100, "d": 100, "phi": "pi"})");
    EXPECT_EQ(a, report("visibility", R"({"V": 100, "d": 100, "phi": "pi"})"));
    const Json doc = Json::parse(a);
    EXPECT_EQ(doc["command"], "visibility");
    EXPECT_EQ(doc["version"], tcat_version());
    EXPECT_EQ(doc["parameters"]["phi"], "pi");
    EXPECT_NEAR(doc["summary"]["visibility"].get<double>(), 1.0, 1e-9);
    EXPECT_EQ(doc["rows"].size(), 1u);
}

TEST(CApi, ReportValidation) {
    report("no-such-command", "{}", TCAT_INVALID_ARGUMENT);
    report("visibility", R"({"V": 0.5})", TCAT_INVALID_ARGUMENT);
    report("visibility", R"({"colour": 1})", TCAT_INVALID_ARGUMENT);
    report("visibility", "[1, 2]", TCAT_INVALID_ARGUMENT);
    report("wigner-grid", R"({"V": 2, "points": 1})", TCAT_INVALID_ARGUMENT);
    report("distinguish", R"({"trials": 10})", TCAT_INVALID_ARGUMENT);
    int n = 0;
    for (const char *const *c = tcat_report_commands(); *c != nullptr; ++c) {
        ++n;
    }
    EXPECT_EQ(n, 11);
}

TEST(CApi, SweepRangesExpand) {
    const Json doc = Json::parse(report("distinguish", R"({"V": "10", "d": "1..4", "points": 4})"));
    ASSERT_EQ(doc["rows"].size(), 4u);
    EXPECT_EQ(doc["rows"][3][1].get<double>(), 4.0);
    const Json logs =
        Json::parse(report("distinguish", R"({"V": "1..100", "d": 2, "points": 3, "log": true, "threshold": "likelihood"})"));
    ASSERT_EQ(logs["rows"].size(), 3u);
    EXPECT_NEAR(logs["rows"][1][0].get<double>(), 10.0, 1e-12);
}

}  // namespace
