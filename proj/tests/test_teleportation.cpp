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

#include "thermalcat/teleportation.hpp"

namespace thermalcat {
namespace {

const double kR = 1.0 / std::numbers::sqrt2;

TEST(Teleportation, FormalRoundTripIsExact) {
    for (auto [a, b] : {std::pair<cplx, cplx>{1.0, 0.0}, {kR, kR}, {0.6, cplx(0.0, 0.8)}, {kR, cplx(0.0, -kR)}}) {
        const TeleportResult t = teleport(a, b, 3.0, 1.5, CorrectionMode::kFormal);
        double total = 0.0;
        for (const TeleportReport &r : t.reports) {
            total += r.probability;
            if (r.possible) {
                EXPECT_TRUE(r.exact_match) << bell_state_name(r.outcome);
                EXPECT_NEAR(r.overlap, 1.0, 1e-10);
            }
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(Teleportation, CorrectionTableForPsiMinusChannel) {
    const auto table = correction_table();
    EXPECT_EQ(table[static_cast<int>(BellState::kPsiMinus)], Correction::kIdentity);
    EXPECT_EQ(table[static_cast<int>(BellState::kPhiMinus)], Correction::kPiPhase);
    EXPECT_EQ(table[static_cast<int>(BellState::kPsiPlus)], Correction::kSignFlipFormal);
    EXPECT_EQ(table[static_cast<int>(BellState::kPhiPlus)], Correction::kPiPhaseAfterSignFlipFormal);
}

TEST(Teleportation, FormalSignFlipExchangesAmplitudes) {
    const PhaseSpaceState q = thermal_qubit(0.6, cplx(0.0, 0.8), 2.0, 1.0);
    const PhaseSpaceState flipped = formal_sign_flip(q, 0);
    const PhaseSpaceState ref = thermal_qubit(0.6, cplx(0.0, -0.8), 2.0, 1.0);
    EXPECT_NEAR(hs_overlap(flipped, ref), hs_overlap(ref, ref), 1e-12);
}

TEST(Teleportation, PhysicalSignFlipImprovesWithAmplitude) {
    double last = 0.0;
    for (double d : {1.0, 2.0, 4.0, 8.0}) {
        const TeleportResult t = teleport(kR, cplx(0.0, kR), 1.0, d, CorrectionMode::kPhysical);
        const TeleportReport &r = t.reports[static_cast<int>(BellState::kPsiPlus)];
        EXPECT_GT(r.overlap, last) << d;
        last = r.overlap;
    }
    EXPECT_GT(last, 0.99);
}

TEST(Teleportation, DisplacementFlipOverlapAtUnitVariance) {
    // |<d| D(i pi/(4d)) |d>|^2-type suppression: exp(-pi^2 / (16 d^2)) on the coherent-state overlap.
    const double d = 4.0;
    const PhaseSpaceState q = thermal_qubit(1.0, 0.0, 1.0, d);
    const PhaseSpaceState moved = displacement_sign_flip(q, 0, d);
    EXPECT_NEAR(hs_overlap(moved, q), std::exp(-std::pow(std::numbers::pi / (4.0 * d), 2)), 1e-12);
}

}  // namespace
}  // namespace thermalcat
