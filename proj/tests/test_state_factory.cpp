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

#include "thermalcat/error.hpp"
#include "thermalcat/kernel_core.hpp"
#include "thermalcat/state_factory.hpp"

namespace thermalcat {
namespace {

constexpr double kPi = std::numbers::pi;

double w1(const PhaseSpaceState &s, cplx a) {
    const cplx p[] = {a};
    return state_wigner(s, p);
}

// Wigner function of N(|d> + s|-d>) for real d.
double cat_wigner(double d, int s, cplx a) {
    const double n2 = 1.0 / (2.0 * (1.0 + s * std::exp(-2.0 * d * d)));
    return n2 * 2.0 / kPi *
           (std::exp(-2.0 * std::norm(a - d)) + std::exp(-2.0 * std::norm(a + d)) +
            2.0 * s * std::exp(-2.0 * std::norm(a)) * std::cos(4.0 * d * a.imag()));
}

TEST(StateFactory, PureLimitIsCoherentCat) {
    for (int s : {1, -1}) {
        const PhaseSpaceState cat = thermal_superposition(1.0, 1.3, kPi, s);
        for (cplx a : {cplx(0.0, 0.0), cplx(0.4, 0.2), cplx(-1.3, 0.05), cplx(0.1, -0.9)}) {
            EXPECT_NEAR(w1(cat, a), cat_wigner(1.3, s, a), 1e-13) << "sign " << s << " at " << a;
        }
        EXPECT_NEAR(purity(cat), 1.0, 1e-12);
    }
}

TEST(StateFactory, OddSuperpositionHitsWignerBound) {
    for (double V : {3.0, 100.0, 1e4}) {
        EXPECT_NEAR(w1(thermal_superposition(V, 0.0, kPi, -1), 0.0), -2.0 / kPi, 1e-10) << V;
    }
}

TEST(StateFactory, EvenSuperpositionOfCentredThermalIsClassical) {
    const PhaseSpaceState plus = thermal_superposition(100.0, 0.0, kPi, 1);
    MinimumConfig cfg;
    cfg.lower = {-3.0, -3.0};
    cfg.upper = {3.0, 3.0};
    cfg.resolution = 61;
    EXPECT_GE(min_wigner(plus, cfg).value, -1e-9);
    EXPECT_LT(purity(plus), 1.0);
}

TEST(StateFactory, BranchProbabilitiesSumToOne) {
    const double r = 1.0 / std::numbers::sqrt2;
    for (double phi : {kPi, kPi / 3.0, 0.1}) {
        const HybridState h = micro_macro_entangle({r, r}, displaced_thermal(4.0, 0.8), 0, {phi});
        EXPECT_NEAR(h.trace(), 1.0, 1e-13);
        const double p = measure_qubit(h, 1).probability + measure_qubit(h, -1).probability;
        EXPECT_NEAR(p, 1.0, 1e-13) << phi;
    }
}

TEST(StateFactory, MeasuredBranchMatchesSuperposition) {
    const double r = 1.0 / std::numbers::sqrt2;
    const double phi = kPi / 5.0;
    const HybridState h = micro_macro_entangle({r, r}, displaced_thermal(6.0, 1.1), 0, {phi});
    for (int s : {1, -1}) {
        const MeasurementOutcome m = measure_qubit(h, s);
        ASSERT_TRUE(m.possible);
        const PhaseSpaceState ref = thermal_superposition(6.0, 1.1, phi, s);
        for (cplx a : {cplx(0.0, 0.0), cplx(1.0, 0.5), cplx(-0.3, 1.2)}) {
            EXPECT_NEAR(w1(m.state, a), w1(ref, a), 1e-13);
        }
    }
}

TEST(StateFactory, HybridPointMatchesClosedForm) {
    const double r = 1.0 / std::numbers::sqrt2;
    for (auto [V, d] : {std::pair{1.0, 0.0}, std::pair{3.0, 0.5}, std::pair{1.0, 6.0}, std::pair{50.0, 2.0}}) {
        const HybridState h = micro_macro_entangle({r, r}, displaced_thermal(V, d), 0, {kPi});
        const cplx q[] = {-0.5}, f[] = {0.0};
        const double closed = 2.0 * (-2.0 + std::exp(-2.0 * d * d / V) / V) / (kPi * kPi * std::sqrt(std::exp(1.0)));
        EXPECT_NEAR(h.wigner(q, f), closed, 1e-13) << V << " " << d;
    }
}

TEST(StateFactory, KerrMovieEndsAtSuperposition) {
    const std::vector<double> thetas = {0.0, kPi};
    const std::vector<PhaseSpaceState> frames = kerr_time_series(100.0, 0.0, thetas, 1);
    ASSERT_EQ(frames.size(), 2u);
    for (cplx a : {cplx(0.0, 0.0), cplx(2.0, 1.0), cplx(-5.0, 3.0)}) {
        EXPECT_NEAR(w1(frames[0], a), w1(displaced_thermal(100.0, 0.0), a), 1e-14);
        EXPECT_NEAR(w1(frames[1], a), w1(thermal_superposition(100.0, 0.0, kPi, 1), a), 1e-13);
    }
}

TEST(StateFactory, TwoModeStatesAreNormalised) {
    for (const PhaseSpaceState &s :
         {two_mode_thermal_entangled(3.0, 1.0, 1), two_mode_thermal_entangled(3.0, 1.0, -1), bs_entangled(3.0, 1.0, 1),
          thermal_bell(BellState::kPhiPlus, 3.0, 1.0), thermal_bell(BellState::kPsiMinus, 3.0, 1.0)}) {
        EXPECT_EQ(s.modes(), 2);
        EXPECT_NEAR(s.trace().real(), 1.0, 1e-12);
        EXPECT_TRUE(s.hermitian_structure());
        EXPECT_LE(purity(s), 1.0 + 1e-12);
    }
}

TEST(StateFactory, PsiIsPhiWithShiftedSecondMode) {
    const PhaseSpaceState phi = thermal_bell(BellState::kPhiMinus, 2.0, 0.7);
    const PhaseSpaceState psi = apply_phase_shift(phi, 1, kPi);
    const PhaseSpaceState ref = thermal_bell(BellState::kPsiMinus, 2.0, 0.7);
    const WignerFunction a(psi), b(ref);
    for (auto [x, y] : {std::pair{cplx(0.1, 0.2), cplx(-0.4, 0.3)}, std::pair{cplx(0.7, 0.0), cplx(-0.7, 0.0)}}) {
        const cplx p[] = {x, y};
        EXPECT_NEAR(a(p), b(p), 1e-13);
    }
}

TEST(StateFactory, ThermalQubitBasisStates) {
    const PhaseSpaceState up = thermal_qubit(1.0, 0.0, 5.0, 2.0);
    const PhaseSpaceState down = thermal_qubit(0.0, 1.0, 5.0, 2.0);
    for (cplx a : {cplx(0.0, 0.0), cplx(2.0, 0.5), cplx(-2.0, -1.0)}) {
        EXPECT_NEAR(w1(up, a), w1(displaced_thermal(5.0, 2.0), a), 1e-13);
        EXPECT_NEAR(w1(down, a), w1(displaced_thermal(5.0, -2.0), a), 1e-13);
    }
}

TEST(StateFactory, ImpossibleBranchIsReported) {
    try {
        thermal_superposition(1.0, 0.0, kPi, -1);
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kImpossibleOutcome);
    }
}

}  // namespace
}  // namespace thermalcat
