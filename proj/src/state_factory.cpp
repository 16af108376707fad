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

#include "thermalcat/state_factory.hpp"

#include <cmath>

#include "thermalcat/error.hpp"

namespace thermalcat {

namespace {

constexpr double kPi = std::numbers::pi;

void check_sign(int sign) { require(sign == 1 || sign == -1, "sign must be +1 or -1"); }

void check_variance(double variance) {
    if (!(variance >= 1.0) || !std::isfinite(variance)) {
        fail(ErrorCode::kInvalidArgument, "thermal variance must satisfy V >= 1");
    }
}

/// Kernel over independent sources with diagonal scale patterns (one source per mode).
ThermalKernel diagonal_kernel(const std::vector<ThermalSource> &sources, std::span<const cplx> ket,
                              std::span<const cplx> bra, cplx weight) {
    const auto n = static_cast<Eigen::Index>(sources.size());
    ThermalKernel k;
    k.weight = weight;
    k.sources = sources;
    k.ket = CMat::Zero(n, n);
    k.bra = CMat::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k.ket(i, i) = ket[i];
        k.bra(i, i) = bra[i];
    }
    k.ket_offset = CVec::Zero(n);
    k.bra_offset = CVec::Zero(n);
    k.phase_alpha = CVec::Zero(n);
    k.phase_alpha_conj = CVec::Zero(n);
    return k;
}

}  // namespace

// ---------------------------------------------------------------------------
// HybridState

HybridState::HybridState(int qubit_dims, std::vector<PhaseSpaceState> blocks)
    : dims_(qubit_dims), blocks_(std::move(blocks)) {
    require(qubit_dims == 2 || qubit_dims == 4, "hybrid states hold one or two qubits");
    if (static_cast<int>(blocks_.size()) != dims_ * dims_) {
        fail(ErrorCode::kDimensionMismatch, "hybrid state needs qubit_dims^2 blocks");
    }
    for (const PhaseSpaceState &b : blocks_) {
        if (b.modes() != blocks_.front().modes()) {
            fail(ErrorCode::kDimensionMismatch, "hybrid blocks differ in mode count");
        }
    }
}

double HybridState::trace() const {
    double t = 0.0;
    for (int i = 0; i < dims_; ++i) {
        t += block(i, i).trace().real();
    }
    return t;
}

HybridState HybridState::normalized() const {
    const double t = trace();
    if (!(t > 1e-300)) {
        fail(ErrorCode::kNumericalFailure, "cannot normalize a hybrid state with zero trace");
    }
    std::vector<PhaseSpaceState> blocks;
    for (const PhaseSpaceState &b : blocks_) {
        blocks.push_back(b.scaled(1.0 / t));
    }
    return HybridState(dims_, std::move(blocks));
}

PhaseSpaceState HybridState::reduced_field() const {
    PhaseSpaceState out = block(0, 0);
    for (int i = 1; i < dims_; ++i) {
        out = out + block(i, i);
    }
    return out;
}

cplx qubit_operator_wigner(int i, int j, cplx alpha) {
    const double g = 2.0 / kPi * std::exp(-2.0 * std::norm(alpha));
    if (i == 0 && j == 0) {
        return g;
    }
    if (i == 1 && j == 0) {
        return g * 2.0 * std::conj(alpha);
    }
    if (i == 0 && j == 1) {
        return g * 2.0 * alpha;
    }
    return g * (4.0 * std::norm(alpha) - 1.0);
}

double HybridState::wigner(std::span<const cplx> qubit_points, std::span<const cplx> field_points) const {
    const int qubits = dims_ == 2 ? 1 : 2;
    if (static_cast<int>(qubit_points.size()) != qubits || static_cast<int>(field_points.size()) != field_modes()) {
        fail(ErrorCode::kDimensionMismatch, "hybrid Wigner point has the wrong dimension");
    }
    cplx total = 0.0;
    double magnitude = 0.0;
    for (int i = 0; i < dims_; ++i) {
        for (int j = 0; j < dims_; ++j) {
            if (block(i, j).terms().empty()) {
                continue;
            }
            cplx q = 1.0;
            for (int b = 0; b < qubits; ++b) {
                const int shift = qubits - 1 - b;
                q *= qubit_operator_wigner((i >> shift) & 1, (j >> shift) & 1, qubit_points[b]);
            }
            const cplx v = q * WignerFunction(block(i, j)).complex_value(field_points);
            total += v;
            magnitude += std::abs(v);
        }
    }
    if (std::abs(total.imag()) > 1e-10 * std::max(1.0, magnitude)) {
        fail(ErrorCode::kHermiticityViolation, "hybrid Wigner function has an imaginary residue");
    }
    return total.real();
}

// ---------------------------------------------------------------------------

MeasurementOutcome project_qubits(const HybridState &hybrid, std::span<const cplx> vector) {
    const int n = hybrid.qubit_dims();
    if (static_cast<int>(vector.size()) != n) {
        fail(ErrorCode::kDimensionMismatch, "projection vector length differs from qubit dimension");
    }
    std::vector<ThermalKernel> terms;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const cplx c = std::conj(vector[i]) * vector[j];
            if (c == 0.0) {
                continue;
            }
            for (ThermalKernel k : hybrid.block(i, j).terms()) {
                k.weight *= c;
                terms.push_back(std::move(k));
            }
        }
    }
    PhaseSpaceState projected(hybrid.field_modes(), std::move(terms));
    MeasurementOutcome out;
    // Rounding in the sum of term traces sets the floor below which the outcome is indistinguishable from zero.
    double scale = 0.0;
    for (const ThermalKernel &k : projected.terms()) {
        scale += std::abs(kernel_trace(k));
    }
    const double total = hybrid.trace();
    out.probability = std::max(0.0, projected.trace().real() / total);
    if (projected.trace().real() <= 1e-300 || projected.trace().real() < 1e-14 * scale) {
        out.probability = 0.0;
        return out;
    }
    out.state = projected.normalized();
    out.possible = true;
    return out;
}

PhaseSpaceState rotate_sides(const PhaseSpaceState &state, int mode, double ket_phase, double bra_phase) {
    if (mode < 0 || mode >= state.modes()) {
        fail(ErrorCode::kDimensionMismatch, "mode index out of range");
    }
    const cplx ek = std::exp(cplx(0.0, ket_phase)), eb = std::exp(cplx(0.0, bra_phase));
    std::vector<ThermalKernel> terms = state.terms();
    for (ThermalKernel &k : terms) {
        k.ket.row(mode) *= ek;
        k.ket_offset[mode] *= ek;
        k.bra.row(mode) *= eb;
        k.bra_offset[mode] *= eb;
    }
    return PhaseSpaceState(state.modes(), std::move(terms));
}

PhaseSpaceState displaced_thermal(double variance, cplx center) {
    check_variance(variance);
    const cplx one[] = {1.0};
    return PhaseSpaceState(1, {ThermalKernel::single(variance, center, one, one)});
}

HybridState micro_macro_entangle(std::array<cplx, 2> amplitudes, const PhaseSpaceState &field, int mode,
                                 KerrConfig kerr) {
    const double norm = std::norm(amplitudes[0]) + std::norm(amplitudes[1]);
    require(std::abs(norm - 1.0) < 1e-12, "qubit amplitudes must be normalized");
    const double phi = std::fmod(kerr.phi, 2.0 * kPi);
    std::vector<PhaseSpaceState> blocks;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const cplx c = amplitudes[i] * std::conj(amplitudes[j]);
            blocks.push_back(rotate_sides(field, mode, phi * i, phi * j).scaled(c));
        }
    }
    return HybridState(2, std::move(blocks));
}

MeasurementOutcome measure_qubit(const HybridState &hybrid, int sign) {
    check_sign(sign);
    require(hybrid.qubit_dims() == 2, "measure_qubit expects a single-qubit hybrid state");
    const double r = 1.0 / std::numbers::sqrt2;
    const cplx v[] = {r, sign * r};
    return project_qubits(hybrid, v);
}

PhaseSpaceState thermal_superposition(double variance, cplx center, double phi, int sign) {
    check_variance(variance);
    check_sign(sign);
    const cplx branch[] = {1.0, std::exp(cplx(0.0, std::fmod(phi, 2.0 * kPi)))};
    const cplx coeff[] = {1.0, static_cast<double>(sign)};
    std::vector<ThermalKernel> terms;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const cplx l[] = {branch[i]}, r[] = {branch[j]};
            terms.push_back(ThermalKernel::single(variance, center, l, r, 0.25 * coeff[i] * coeff[j]));
        }
    }
    PhaseSpaceState s(1, std::move(terms));
    if (!(s.trace().real() > 1e-300)) {
        fail(ErrorCode::kImpossibleOutcome, "superposition branch has zero probability");
    }
    return s.normalized();
}

std::vector<PhaseSpaceState> kerr_time_series(double variance, cplx center, std::span<const double> thetas,
                                              int sign) {
    std::vector<PhaseSpaceState> out;
    for (double theta : thetas) {
        require(theta >= 0.0 && theta <= kPi, "Kerr interaction angles lie in [0, pi]");
        out.push_back(theta == 0.0 ? displaced_thermal(variance, center)
                                   : thermal_superposition(variance, center, theta, sign));
    }
    return out;
}

namespace {

/// Two sources (one per mode) with branch rotations; mode 1 of branch s is scaled by flip[s].
PhaseSpaceState two_source_superposition(double variance, cplx center, int sign, std::array<cplx, 2> branch,
                                         std::array<cplx, 2> second_mode_branch) {
    check_variance(variance);
    check_sign(sign);
    const std::vector<ThermalSource> sources = {{variance, center}, {variance, center}};
    const cplx coeff[] = {1.0, static_cast<double>(sign)};
    std::vector<ThermalKernel> terms;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const cplx ket[] = {branch[i], second_mode_branch[i]};
            const cplx bra[] = {branch[j], second_mode_branch[j]};
            terms.push_back(diagonal_kernel(sources, ket, bra, 0.25 * coeff[i] * coeff[j]));
        }
    }
    PhaseSpaceState s(2, std::move(terms));
    if (!(s.trace().real() > 1e-300)) {
        fail(ErrorCode::kImpossibleOutcome, "entangled branch has zero norm");
    }
    return s.normalized();
}

}  // namespace

PhaseSpaceState two_mode_thermal_entangled(double variance, cplx center, int sign, double phi) {
    const cplx e = std::exp(cplx(0.0, phi));
    return two_source_superposition(variance, center, sign, {1.0, e}, {1.0, e});
}

const char *bell_state_name(BellState which) {
    switch (which) {
        case BellState::kPhiPlus:
            return "Phi+";
        case BellState::kPhiMinus:
            return "Phi-";
        case BellState::kPsiPlus:
            return "Psi+";
        case BellState::kPsiMinus:
            return "Psi-";
    }
    return "?";
}

PhaseSpaceState thermal_bell(BellState which, double variance, cplx center) {
    const bool phi = which == BellState::kPhiPlus || which == BellState::kPhiMinus;
    const int sign = (which == BellState::kPhiPlus || which == BellState::kPsiPlus) ? 1 : -1;
    // Psi: |alpha, -beta> +- |-alpha, beta>
    const cplx t = phi ? 1.0 : -1.0;
    return two_source_superposition(variance, center, sign, {1.0, -1.0}, {t, -t});
}

PhaseSpaceState bs_entangled(double variance, cplx center, int sign, double phi) {
    PhaseSpaceState single = thermal_superposition(variance, center, phi, sign);
    return apply_beam_splitter(append_vacuum(single, 1), 0, 1, kPi / 2.0, 0.0);
}

PhaseSpaceState thermal_qubit(cplx a, cplx b, double variance, cplx center) {
    check_variance(variance);
    require(std::abs(a) + std::abs(b) > 0.0, "thermal qubit needs a nonzero amplitude vector");
    const cplx branch[] = {1.0, -1.0};
    const cplx coeff[] = {a, b};
    std::vector<ThermalKernel> terms;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const cplx w = coeff[i] * std::conj(coeff[j]);
            if (w == 0.0) {
                continue;
            }
            const cplx l[] = {branch[i]}, r[] = {branch[j]};
            terms.push_back(ThermalKernel::single(variance, center, l, r, w));
        }
    }
    PhaseSpaceState s(1, std::move(terms));
    if (!(s.trace().real() > 1e-300)) {
        fail(ErrorCode::kImpossibleOutcome, "thermal qubit has zero norm");
    }
    return s.normalized();
}

}  // namespace thermalcat
