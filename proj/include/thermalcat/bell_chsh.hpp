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

#include <cstdint>
#include <string>
#include <vector>

#include "thermalcat/kernel_core.hpp"

namespace thermalcat {

/// Displaced-parity settings: alpha, alpha' on mode 0 and beta, beta' on mode 1.
struct ChshSettings {
    cplx alpha{0.0, 0.0};
    cplx alpha_prime{0.0, 0.0};
    cplx beta{0.0, 0.0};
    cplx beta_prime{0.0, 0.0};
};

struct ChshConfig {
    int restarts = 32;
    std::uint64_t seed = 20060101;
    int max_iterations = 4000;
    double simplex_tolerance = 1e-8;
    /// Radius of the settings box; <= 0 selects max(3, 3/sqrt(V)) (1 + d/V) from the hints below.
    double box_radius = 0.0;
    double variance_hint = 1.0;
    double center_hint = 0.0;
    /// Extra starting points (evaluated and refined before the random restarts).
    std::vector<ChshSettings> warm_starts;
};

struct ChshResult {
    double value = 0.0;         ///< |B|
    double signed_value = 0.0;  ///< B at the argmax
    ChshSettings argmax;
    int restarts_used = 0;
    bool converged = false;
    /// Best |B| after each start, in order of evaluation.
    std::vector<double> trace;
};

/// (pi^2 / 4) [W(a, b) + W(a, b') + W(a', b) - W(a', b')].
double chsh_signed(const WignerFunction &wigner, const ChshSettings &s);
double chsh_signed(const PhaseSpaceState &state, const ChshSettings &s);
double chsh_value(const PhaseSpaceState &state, const ChshSettings &s);

double default_chsh_box(double variance, double center);

/// Settings that are optimal for the pure two-mode cat with component amplitudes
/// (+-a0, +-a1) ("same" sign pattern) when centred on `offset0`, `offset1`.
std::vector<ChshSettings> cat_warm_starts(cplx amplitude0, cplx amplitude1, cplx offset0 = 0.0, cplx offset1 = 0.0);

ChshResult optimize_chsh(const PhaseSpaceState &state, const ChshConfig &config);

enum class ChshFamily { kTwoModeThermal, kBsEntangled };

struct ChshSweepRow {
    ChshFamily family;
    double variance = 1.0;
    double center = 0.0;
    double theta = 0.0;  ///< Kerr interaction angle lambda t used to generate the state
    ChshResult result;
};

struct ChshSweep {
    std::vector<ChshSweepRow> rows;
    /// Adjacent rows where B decreased while the parameter increased.
    int decreases = 0;
};

/// Builds the state of the family at (V, d, theta) with branch sign +.
PhaseSpaceState chsh_family_state(ChshFamily family, double variance, double center, double theta);

/// Optimizes at every (d, theta) point in order, warm-starting from the previous argmax.
ChshSweep chsh_sweep(ChshFamily family, double variance, const std::vector<double> &centers,
                     const std::vector<double> &thetas, const ChshConfig &config);

const char *chsh_family_name(ChshFamily family);

struct ViolationWindow {
    /// Largest offset delta in [0, pi] with B(pi - delta) > 2 found by bisection.
    double half_width = 0.0;
    int evaluations = 0;
};

/// Half-width in the interaction angle of the Bell-violation window centred on theta = pi.
ViolationWindow violation_window(ChshFamily family, double variance, double center, const ChshConfig &config,
                                 double resolution = 1e-3);

}  // namespace thermalcat
