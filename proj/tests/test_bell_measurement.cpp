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

#include "thermalcat/bell_measurement.hpp"
#include "thermalcat/error.hpp"
#include "thermalcat/state_factory.hpp"

namespace thermalcat {
namespace {

constexpr BellState kLabels[] = {BellState::kPhiPlus, BellState::kPhiMinus, BellState::kPsiPlus,
                                 BellState::kPsiMinus};

// Expected {++, +-, -+, --} from the closed-form outcome probabilities.
std::array<double, 4> closed_form(BellState input, double V, double d) {
    const double e = std::exp(-4.0 * d * d / V);
    const double ap = (V + 1.0) * (V + e) / (2.0 * (V * V + e)), bp = (V - 1.0) * (V - e) / (2.0 * (V * V + e));
    const double am = (V + 1.0) * (V - e) / (2.0 * (V * V - e)), bm = (V - 1.0) * (V + e) / (2.0 * (V * V - e));
    switch (input) {
        case BellState::kPhiPlus:
        case BellState::kPsiPlus:
            return {ap, 0.0, 0.0, bp};
        case BellState::kPhiMinus:
            return {0.0, am, bm, 0.0};
        case BellState::kPsiMinus:
            return {0.0, bm, am, 0.0};
    }
    return {};
}

TEST(BellMeasurement, OutcomeProbabilitiesMatchClosedForm) {
    for (double V : {1.0, 2.0, 5.0}) {
        for (double d : {0.5, 1.0, 3.0}) {
            for (BellState b : kLabels) {
                const auto p = outcome_probabilities(b, V, d);
                const auto c = closed_form(b, V, d);
                for (int i = 0; i < 4; ++i) {
                    EXPECT_NEAR(p[i], c[i], 1e-12) << bell_state_name(b) << " V=" << V << " d=" << d << " i=" << i;
                }
            }
        }
    }
}

TEST(BellMeasurement, ConditionalHomodyneIsNormalised) {
    const Marginal m = homodyne_distribution(BellState::kPsiPlus, QubitOutcome::kPlusPlus, Detector::kC, 4.0, 2.0);
    EXPECT_NEAR(m.total(), 1.0, 1e-12);
    EXPECT_THROW(homodyne_distribution(BellState::kPhiPlus, QubitOutcome::kPlusMinus, Detector::kC, 4.0, 2.0), Error);
}

TEST(BellMeasurement, PhiPlusHomodyneClosedForm) {
    for (auto [V, d] : {std::pair{1.0, 1.0}, std::pair{10.0, 5.5}, std::pair{20.0, 2.0}}) {
        const Marginal m = homodyne_distribution(BellState::kPhiPlus, QubitOutcome::kPlusPlus, Detector::kC, V, d);
        for (double x : {0.0, 0.3, 1.7, -4.0}) {
            const double closed =
                std::sqrt(V) * (std::exp(-V * x * x) + std::exp(-x * x / V)) / (std::sqrt(std::numbers::pi) * (V + 1.0));
            EXPECT_NEAR(m(x), closed, 1e-13) << V << " " << d << " " << x;
        }
    }
}

TEST(BellMeasurement, PhotonNumberIsConserved) {
    for (BellState b : kLabels) {
        const PhaseSpaceState s = thermal_bell(b, 3.0, 1.5);
        const PhotonSplit n = mean_photon_split(b, 3.0, 1.5);
        EXPECT_NEAR(n.n_a + n.n_b, mean_photon_number(s, 0) + mean_photon_number(s, 1), 1e-10);
        EXPECT_NEAR(n.n_many + n.n_few, n.n_a + n.n_b, 1e-10);
    }
}

TEST(BellMeasurement, DistinguishabilityGrowsWithSeparation) {
    const double low = distinguishability(10.0, 3.0);
    const double mid = distinguishability(10.0, 5.5);
    const double high = distinguishability(10.0, 10.0);
    EXPECT_LT(low, mid);
    EXPECT_LT(mid, high);
    EXPECT_GT(high, 0.99999);
    // The likelihood-ratio threshold cannot do worse than |d|.
    EXPECT_GE(distinguishability(10.0, 5.5, likelihood_threshold(10.0, 5.5)), mid - 1e-12);
}

TEST(BellMeasurement, SamplerInvertsCdf) {
    const Marginal m = homodyne_distribution(BellState::kPhiPlus, QubitOutcome::kPlusPlus, Detector::kC, 3.0, 1.0);
    const MarginalSampler sample(m);
    for (double u : {0.1, 0.5, 0.93}) {
        EXPECT_NEAR(m.integral(-INFINITY, sample(u)), u, 1e-8);
    }
}

TEST(BellMeasurement, MonteCarloIsSeeded) {
    const MonteCarloResult a = monte_carlo_discrimination(10.0, 8.0, 500, 11);
    const MonteCarloResult b = monte_carlo_discrimination(10.0, 8.0, 500, 11);
    EXPECT_EQ(a.confusion, b.confusion);
    for (int i = 0; i < 4; ++i) {
        long row = 0;
        for (long c : a.confusion[i]) {
            row += c;
        }
        EXPECT_EQ(row, 500);
        EXPECT_GT(a.accuracy[i], 0.95);
    }
}

TEST(BellMeasurement, DecisionRuleUsesParityAndHomodyne) {
    BellOutcomeRecord r;
    r.outcome = QubitOutcome::kPlusPlus;
    r.homodyne_x = 0.1;
    EXPECT_EQ(discriminate(r, 10.0, 5.0), BellState::kPhiPlus);
    r.homodyne_x = 9.0;
    EXPECT_EQ(discriminate(r, 10.0, 5.0), BellState::kPsiPlus);
    r.outcome = QubitOutcome::kPlusMinus;
    EXPECT_EQ(discriminate(r, 10.0, 5.0), BellState::kPsiMinus);
}

}  // namespace
}  // namespace thermalcat
