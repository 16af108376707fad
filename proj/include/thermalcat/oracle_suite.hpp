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

#pragma once

#include <array>
#include <numbers>
#include <string>
#include <vector>

#include "thermalcat/fock_oracle.hpp"
#include "thermalcat/state_factory.hpp"

namespace thermalcat {

struct OracleSuiteConfig {
    double max_variance = 5.0;
    double max_center = 2.0;
    std::vector<double> phis = {std::numbers::pi, std::numbers::pi / 2.0, std::numbers::pi / 16.0};
    int grid_points = 21;
    double grid_radius = 4.0;
    /// Largest per-mode cutoff for dense two-mode matrices.
    int dense_cutoff_limit = 50;
    double wigner_tolerance = 1e-6;
    double probability_tolerance = 1e-5;
    double parity_tolerance = 1e-8;
};

struct OracleCase {
    std::string state;
    double variance = 1.0;
    double center = 0.0;
    double phi = 0.0;
    int sign = 1;
    /// "fock", "fock-factorized", "fock-dense" or "fock-covariance".
    std::string route;
    int cutoff = 0;
    double deficit = 0.0;
    double wigner_deviation = 0.0;
    /// NaN when the route has no probability comparison.
    double probability_deviation = 0.0;
    /// Both sides agree the conditioning outcome is impossible.
    bool impossible = false;
};

struct OracleSuiteResult {
    std::vector<OracleCase> cases;
    double max_wigner_deviation = 0.0;
    double max_probability_deviation = 0.0;
    /// Even-parity probability (Fock) and (pi^2/4) W(0, 0) (closed form) per BellState at V=3, d=1.
    std::array<double, 4> parity_fock{};
    std::array<double, 4> parity_closed_form{};
    double parity_residual = 0.0;
    bool passed = false;
};

/// Closed-form states against the truncated Fock oracle over V <= max_variance, |d| <= max_center.
OracleSuiteResult run_oracle_suite(const OracleSuiteConfig &config);

}  // namespace thermalcat
