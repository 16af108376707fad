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

#include "thermalcat/teleportation.hpp"

#include <cmath>
#include <numbers>

#include "thermalcat/error.hpp"

namespace thermalcat {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<BellState, 4> kLabels = {BellState::kPhiPlus, BellState::kPhiMinus, BellState::kPsiPlus,
                                              BellState::kPsiMinus};

// Sign of a coherent-qubit branch: the mode's amplitude must be +-1 times a single source.
double branch_sign(const CMat &rows, const CVec &offsets, int mode) {
    const cplx s = rows.row(mode).sum();
    if (std::abs(offsets(mode)) > 1e-12 || std::abs(std::abs(s.real()) - 1.0) > 1e-12 || std::abs(s.imag()) > 1e-12) {
        fail(ErrorCode::kInvalidArgument, "formal sign flip needs +-alpha branches on mode " + std::to_string(mode));
    }
    return s.real() > 0.0 ? 1.0 : -1.0;
}

cplx bell_amplitude(BellState label, double s0, double s1) {
    const bool same = s0 == s1;
    switch (label) {
        case BellState::kPhiPlus:
            return same ? 1.0 : 0.0;
        case BellState::kPhiMinus:
            return same ? s0 : 0.0;
        case BellState::kPsiPlus:
            return same ? 0.0 : 1.0;
        case BellState::kPsiMinus:
            return same ? 0.0 : s0;
    }
    return 0.0;
}

ThermalKernel restrict_to_mode(const ThermalKernel &k, int mode) {
    std::vector<int> used;
    for (int s = 0; s < k.num_sources(); ++s) {
        if (std::abs(k.ket(mode, s)) > 0.0 || std::abs(k.bra(mode, s)) > 0.0 || std::abs(k.phase_alpha(s)) > 0.0 ||
            std::abs(k.phase_alpha_conj(s)) > 0.0) {
            used.push_back(s);
        }
    }
    const auto n = static_cast<Eigen::Index>(used.size());
    ThermalKernel r;
    r.weight = k.weight;
    r.ket = CMat(1, n);
    r.bra = CMat(1, n);
    r.phase_alpha = CVec(n);
    r.phase_alpha_conj = CVec(n);
    for (Eigen::Index c = 0; c < n; ++c) {
        const int s = used[c];
        r.sources.push_back(k.sources[s]);
        r.ket(0, c) = k.ket(mode, s);
        r.bra(0, c) = k.bra(mode, s);
        r.phase_alpha(c) = k.phase_alpha(s);
        r.phase_alpha_conj(c) = k.phase_alpha_conj(s);
    }
    r.ket_offset = CVec::Constant(1, k.ket_offset(mode));
    r.bra_offset = CVec::Constant(1, k.bra_offset(mode));
    return r;
}

// Projection of modes (0, 1) onto a Bell pair in the +-alpha basis; mode 2 is kept.
PhaseSpaceState formal_bell_projection(const PhaseSpaceState &joint, BellState label) {
    std::vector<ThermalKernel> out;
    for (const ThermalKernel &k : joint.terms()) {
        const cplx left = bell_amplitude(label, branch_sign(k.ket, k.ket_offset, 0), branch_sign(k.ket, k.ket_offset, 1));
        const cplx right = bell_amplitude(label, branch_sign(k.bra, k.bra_offset, 0), branch_sign(k.bra, k.bra_offset, 1));
        const cplx w = 0.5 * left * std::conj(right);
        if (w == 0.0) {
            continue;
        }
        ThermalKernel r = restrict_to_mode(k, 2);
        r.weight *= w;
        out.push_back(std::move(r));
    }
    if (out.empty()) {
        fail(ErrorCode::kImpossibleOutcome, std::string("formal projection onto ") + bell_state_name(label) + " vanishes");
    }
    return PhaseSpaceState(1, std::move(out)).merged();
}

PhaseSpaceState apply_correction(const PhaseSpaceState &s, Correction c, cplx center) {
    switch (c) {
        case Correction::kIdentity:
            return s;
        case Correction::kPiPhase:
            return apply_phase_shift(s, 0, kPi);
        case Correction::kSignFlipFormal:
            return formal_sign_flip(s, 0);
        case Correction::kSignFlipDisplacement:
            return displacement_sign_flip(s, 0, center);
        case Correction::kPiPhaseAfterSignFlipFormal:
            return apply_phase_shift(formal_sign_flip(s, 0), 0, kPi);
        case Correction::kPiPhaseAfterSignFlipDisplacement:
            return apply_phase_shift(displacement_sign_flip(s, 0, center), 0, kPi);
    }
    return s;
}

Correction physical(Correction c) {
    switch (c) {
        case Correction::kSignFlipFormal:
            return Correction::kSignFlipDisplacement;
        case Correction::kPiPhaseAfterSignFlipFormal:
            return Correction::kPiPhaseAfterSignFlipDisplacement;
        default:
            return c;
    }
}

// The Pauli that undoes the formal projection, found on a probe qubit without accidental symmetries.
Correction match_correction(BellState label, BellState channel, double variance, cplx center) {
    const PhaseSpaceState input = thermal_qubit(0.6, 0.8 * std::exp(cplx(0.0, kPi / 5.0)), variance, center);
    const PhaseSpaceState projected =
        formal_bell_projection(input.tensor(thermal_bell(channel, variance, center)), label);
    for (Correction c : {Correction::kIdentity, Correction::kPiPhase, Correction::kSignFlipFormal,
                         Correction::kPiPhaseAfterSignFlipFormal}) {
        if (kernel_list_equal(apply_correction(projected, c, 0.0).normalized(), input)) {
            return c;
        }
    }
    fail(ErrorCode::kNumericalFailure, "no Pauli correction reproduces the input qubit");
}

}  // namespace

const char *correction_name(Correction c) {
    switch (c) {
        case Correction::kIdentity:
            return "identity";
        case Correction::kPiPhase:
            return "pi-phase";
        case Correction::kSignFlipFormal:
            return "sign-flip";
        case Correction::kSignFlipDisplacement:
            return "displacement";
        case Correction::kPiPhaseAfterSignFlipFormal:
            return "sign-flip+pi-phase";
        case Correction::kPiPhaseAfterSignFlipDisplacement:
            return "displacement+pi-phase";
    }
    return "?";
}

std::array<Correction, 4> correction_table() {
    return {Correction::kPiPhaseAfterSignFlipFormal, Correction::kPiPhase, Correction::kSignFlipFormal,
            Correction::kIdentity};
}

PhaseSpaceState formal_sign_flip(const PhaseSpaceState &state, int mode) {
    require(mode >= 0 && mode < state.modes(), "mode out of range");
    std::vector<ThermalKernel> terms = state.terms();
    for (ThermalKernel &k : terms) {
        k.weight *= branch_sign(k.ket, k.ket_offset, mode) * branch_sign(k.bra, k.bra_offset, mode);
    }
    return PhaseSpaceState(state.modes(), std::move(terms));
}

PhaseSpaceState displacement_sign_flip(const PhaseSpaceState &state, int mode, cplx center) {
    require(std::abs(center) > 0.0, "displacement sign flip needs d != 0");
    return apply_displacement(state, mode, cplx(0.0, kPi / 4.0) / std::conj(center));
}

TeleportResult teleport(cplx a, cplx b, double variance, cplx center, CorrectionMode mode, BellState channel) {
    const PhaseSpaceState input = thermal_qubit(a, b, variance, center);
    const PhaseSpaceState joint = input.tensor(thermal_bell(channel, variance, center));

    // Measurement statistics: BS1 on modes (0, 1), dual-rail qubits, homodyne on mode 0.
    const HybridState hybrid = dual_rail_coupling(apply_beam_splitter(joint, 1, 0, kPi / 2.0, 0.0), 0, 1);
    const double t = std::abs(center);
    TeleportResult result;
    std::array<double, 4> label_probability{};
    for (int q = 0; q < 4; ++q) {
        const auto outcome = static_cast<QubitOutcome>(q);
        MeasurementOutcome m = project_qubits(hybrid, qubit_outcome_vector(outcome));
        result.qubit_outcome_probabilities[q] = m.probability;
        if (!m.possible) {
            continue;
        }
        const Marginal x = marginal_distribution(m.state, 0, 0.0, QuadratureConvention::kCanonical);
        const double inside = x.integral(-t, t);
        const double outside = x.integral(-INFINITY, -t) + x.integral(t, INFINITY);
        const bool plus_class = outcome == QubitOutcome::kPlusPlus || outcome == QubitOutcome::kMinusMinus;
        label_probability[static_cast<int>(plus_class ? BellState::kPhiPlus : BellState::kPhiMinus)] +=
            m.probability * inside;
        label_probability[static_cast<int>(plus_class ? BellState::kPsiPlus : BellState::kPsiMinus)] +=
            m.probability * outside;
    }

    const double input_purity = hs_overlap(input, input);
    for (BellState label : kLabels) {
        TeleportReport r;
        r.outcome = label;
        r.probability = label_probability[static_cast<int>(label)];
        const PhaseSpaceState projected = formal_bell_projection(joint, label);
        r.formal_probability = projected.trace().real();
        if (!(r.formal_probability > 1e-300)) {
            result.reports.push_back(std::move(r));
            continue;
        }
        r.possible = true;
        const Correction formal = match_correction(label, channel, variance, center);
        r.correction = mode == CorrectionMode::kFormal ? formal : physical(formal);
        r.output = apply_correction(projected, r.correction, center).normalized();
        r.overlap = hs_overlap(r.output, input) / input_purity;
        r.exact_match = kernel_list_equal(r.output, input);
        result.reports.push_back(std::move(r));
    }
    return result;
}

}  // namespace thermalcat
