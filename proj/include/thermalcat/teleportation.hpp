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
#include <vector>

#include "thermalcat/bell_measurement.hpp"

namespace thermalcat {

enum class Correction {
    kIdentity,
    kPiPhase,
    kSignFlipFormal,
    kSignFlipDisplacement,
    kPiPhaseAfterSignFlipFormal,
    kPiPhaseAfterSignFlipDisplacement,
};

const char *correction_name(Correction c);

enum class CorrectionMode { kFormal, kPhysical };

/// Outcome -> correction for the Psi- channel, indexed by BellState (formal sign flips).
std::array<Correction, 4> correction_table();

struct TeleportReport {
    BellState outcome = BellState::kPsiMinus;
    /// Probability that the homodyne-assisted measurement reports this label.
    double probability = 0.0;
    /// Norm of the formal Bell projection (1/4 for every label in the large-d limit).
    double formal_probability = 0.0;
    Correction correction = Correction::kIdentity;
    /// Tr[rho_out rho_in] / Tr[rho_in^2].
    double overlap = 0.0;
    bool exact_match = false;
    bool possible = false;
    PhaseSpaceState output;
};

struct TeleportResult {
    std::vector<TeleportReport> reports;
    /// Qubit-outcome probabilities of the measurement on modes (1, 2), indexed by QubitOutcome.
    std::array<double, 4> qubit_outcome_probabilities{};
};

/// Applies the sign flip |alpha> -> |alpha>, |-alpha> -> -|-alpha> by relabelling kernel weights.
PhaseSpaceState formal_sign_flip(const PhaseSpaceState &state, int mode);

/// Displacement by i pi / (4 d), the approximate sign flip for a qubit of amplitude d.
PhaseSpaceState displacement_sign_flip(const PhaseSpaceState &state, int mode, cplx center);

/// Teleports thermal_qubit(a, b, V, d) through thermal_bell(channel, V, d).
TeleportResult teleport(cplx a, cplx b, double variance, cplx center, CorrectionMode mode,
                        BellState channel = BellState::kPsiMinus);

}  // namespace thermalcat
