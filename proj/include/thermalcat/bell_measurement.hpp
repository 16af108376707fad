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
#include <cstdint>
#include <optional>

#include "thermalcat/state_factory.hpp"

namespace thermalcat {

/// Dual-rail qubit outcomes; the first sign belongs to the qubit coupled to mode c.
enum class QubitOutcome { kPlusPlus = 0, kPlusMinus = 1, kMinusPlus = 2, kMinusMinus = 3 };

const char *qubit_outcome_name(QubitOutcome outcome);

/// Homodyne detector C watches mode c (index 0), detector D mode d (index 1).
enum class Detector { kC, kD };

/// 50:50 beam splitter on a two-mode state; output mode 0 carries (alpha - beta)/sqrt2,
/// output mode 1 carries (alpha + beta)/sqrt2.
PhaseSpaceState bs1_transform(const PhaseSpaceState &bell);

/// pi cross-Kerr coupling of modes c and d of `field` to two dual-rail qubits prepared in psi_+.
HybridState dual_rail_coupling(const PhaseSpaceState &field, int mode_c, int mode_d);

/// Logical four-component vector of |psi_s1>|psi_s2>.
std::array<cplx, 4> qubit_outcome_vector(QubitOutcome outcome);

/// Probabilities indexed by QubitOutcome for a thermal-Bell input.
std::array<double, 4> outcome_probabilities(BellState input, double variance, double center);

/// Normalized state of modes (c, d) after the qubit outcome.
MeasurementOutcome conditional_field_state(BellState input, double variance, double center, QubitOutcome outcome);

/// X-quadrature density (canonical convention) at the detector; throws kImpossibleOutcome for infeasible pairs.
Marginal homodyne_distribution(BellState input, QubitOutcome outcome, Detector detector, double variance,
                               double center);

/// Distinguishability between Phi+ and Psi+ ++ densities at detector C using the |x| < threshold split;
/// threshold < 0 selects threshold = d.
double distinguishability(double variance, double center, double threshold = -1.0);

/// Positive crossing point of the Phi+ and Psi+ ++ densities (likelihood-ratio threshold).
double likelihood_threshold(double variance, double center);

struct BellOutcomeRecord {
    QubitOutcome outcome = QubitOutcome::kPlusPlus;
    double homodyne_x = 0.0;
    std::optional<double> homodyne_x_d;
    BellState decision = BellState::kPhiPlus;
    bool correct = false;
};

/// Parity class from the qubits, Phi/Psi from |x_C| < threshold (and |x_D| >= threshold when present).
BellState discriminate(const BellOutcomeRecord &record, double variance, double center, double threshold = -1.0);

struct MonteCarloResult {
    long trials_per_label = 0;
    /// confusion[true label][decided label]
    std::array<std::array<long, 4>, 4> confusion{};
    std::array<double, 4> accuracy{};
};

MonteCarloResult monte_carlo_discrimination(double variance, double center, long trials_per_label, std::uint64_t seed);

struct PhotonSplit {
    double n_a = 0.0;  ///< detector A (mode d, eta)
    double n_b = 0.0;  ///< detector B (mode c, xi)
    double n_many = 0.0;
    double n_few = 0.0;
};

PhotonSplit mean_photon_split(BellState input, double variance, double center);

/// Draws from a closed-form density by inverting its CDF.
class MarginalSampler {
   public:
    explicit MarginalSampler(Marginal marginal);
    /// u in (0, 1).
    double operator()(double u) const;

   private:
    Marginal marginal_;
    std::vector<double> grid_;
    std::vector<double> cdf_;
};

}  // namespace thermalcat
