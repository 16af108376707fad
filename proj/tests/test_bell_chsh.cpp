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

#include "thermalcat/bell_chsh.hpp"
#include "thermalcat/fock_oracle.hpp"
#include "thermalcat/state_factory.hpp"

namespace thermalcat {
namespace {

constexpr double kPi = std::numbers::pi;
const double kTsirelson = 2.0 * std::numbers::sqrt2;

double fock_chsh(const FockDensityMatrix &rho, const ChshSettings &s) {
    auto at = [&](cplx a, cplx b) {
        const cplx p[] = {a, b};
        return fock_wigner(rho, p);
    };
    return kPi * kPi / 4.0 *
           (at(s.alpha, s.beta) + at(s.alpha, s.beta_prime) + at(s.alpha_prime, s.beta) -
            at(s.alpha_prime, s.beta_prime));
}

TEST(BellChsh, CombinationMatchesFockOracle) {
    const double V = 2.0, d = 0.8, r = 1.0 / std::numbers::sqrt2;
    const FockDensityMatrix thermal = thermal_fock(V, d);
    const cplx q[] = {r, r};
    FockDensityMatrix joint = fock_controlled_kerr(thermal.tensor(thermal), q, 0, kPi);
    joint = fock_cross_kerr(joint, 0, 2, kPi);
    CVec v(2);
    v << r, r;
    const int sub[] = {0};
    const FockDensityMatrix rho = fock_project(joint, sub, v).state;
    const PhaseSpaceState state = two_mode_thermal_entangled(V, d, 1);
    for (const ChshSettings &s : {ChshSettings{0.0, cplx(0.0, 0.3), 0.1, cplx(-0.2, 0.25)},
                                  ChshSettings{cplx(0.05, 0.1), cplx(0.4, -0.2), cplx(0.0, -0.15), 0.5}}) {
        EXPECT_NEAR(chsh_signed(state, s), fock_chsh(rho, s), 1e-6);
    }
}

TEST(BellChsh, OptimisedValueRespectsTsirelson) {
    ChshConfig cfg;
    cfg.restarts = 8;
    for (ChshFamily f : {ChshFamily::kTwoModeThermal, ChshFamily::kBsEntangled}) {
        for (auto [V, d] : {std::pair{1.0, 2.0}, std::pair{5.0, 3.0}}) {
            const ChshSweep sweep = chsh_sweep(f, V, {d}, {kPi}, cfg);
            const double b = sweep.rows.front().result.value;
            EXPECT_LE(b, kTsirelson + 1e-9);
            EXPECT_GT(b, 2.0) << chsh_family_name(f) << " V=" << V;
        }
    }
}

TEST(BellChsh, OptimiserIsReproducible) {
    ChshConfig cfg;
    cfg.restarts = 6;
    cfg.seed = 42;
    const PhaseSpaceState s = bs_entangled(3.0, 1.0, 1);
    cfg.variance_hint = 3.0;
    cfg.center_hint = 1.0;
    const ChshResult a = optimize_chsh(s, cfg);
    const ChshResult b = optimize_chsh(s, cfg);
    EXPECT_EQ(a.value, b.value);
    EXPECT_NEAR(std::abs(chsh_signed(s, a.argmax)), a.value, 1e-12);
}

TEST(BellChsh, BeamSplitterLimitAtLargeVariance) {
    const ChshSweep sweep = chsh_sweep(ChshFamily::kBsEntangled, 1000.0, {0.0}, {kPi}, ChshConfig{});
    EXPECT_NEAR(sweep.rows.front().result.value, 2.32449, 0.01);
}

TEST(BellChsh, ProductStatesDoNotViolate) {
    ChshConfig cfg;
    cfg.restarts = 8;
    const PhaseSpaceState product = displaced_thermal(1.0, 0.5).tensor(displaced_thermal(1.0, -0.5));
    EXPECT_LE(optimize_chsh(product, cfg).value, 2.0 + 1e-9);
}

TEST(BellChsh, FamilyStatesAtPi) {
    const PhaseSpaceState tm = chsh_family_state(ChshFamily::kTwoModeThermal, 4.0, 1.0, kPi);
    const PhaseSpaceState ref = two_mode_thermal_entangled(4.0, 1.0, 1, kPi);
    EXPECT_NEAR(hs_overlap(tm, ref), purity(ref), 1e-12);
    EXPECT_STREQ(chsh_family_name(ChshFamily::kBsEntangled), "bs_entangled");
}

}  // namespace
}  // namespace thermalcat
