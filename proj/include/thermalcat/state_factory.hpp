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
#include <span>
#include <vector>

#include "thermalcat/kernel_core.hpp"

namespace thermalcat {

/// Cross-Kerr rotation angle phi = lambda t (taken mod 2 pi).
struct KerrConfig {
    double phi = 0.0;
};

/// Qubit register (one or two qubits) coupled to field modes, stored as a
/// matrix of unnormalized field-operator blocks: rho = sum_ij |i><j| (x) block(i, j).
class HybridState {
   public:
    HybridState(int qubit_dims, std::vector<PhaseSpaceState> blocks);

    int qubit_dims() const { return dims_; }
    int field_modes() const { return blocks_.front().modes(); }
    const PhaseSpaceState &block(int i, int j) const { return blocks_[i * dims_ + j]; }

    /// Sum of the diagonal block traces.
    double trace() const;
    HybridState normalized() const;

    /// Field state with the qubits traced out (unnormalized if the hybrid is).
    PhaseSpaceState reduced_field() const;

    /// Joint Wigner function: qubit i mapped to the phase space of a
    /// {0,1}-photon mode, one complex point per qubit followed by the field points.
    double wigner(std::span<const cplx> qubit_points, std::span<const cplx> field_points) const;

   private:
    int dims_;
    std::vector<PhaseSpaceState> blocks_;
};

/// W of the operator |i><j| on the {|0>, |1>} subspace of a mode.
cplx qubit_operator_wigner(int i, int j, cplx alpha);

struct MeasurementOutcome {
    PhaseSpaceState state;  ///< normalized conditional state; empty if impossible
    double probability = 0.0;
    bool possible = false;
};

/// Projects the qubit register on `vector` (length qubit_dims).
MeasurementOutcome project_qubits(const HybridState &hybrid, std::span<const cplx> vector);

/// Rotates the ket side of `mode` by e^{i ket_phase} and the bra side by e^{i bra_phase}.
PhaseSpaceState rotate_sides(const PhaseSpaceState &state, int mode, double ket_phase, double bra_phase);

PhaseSpaceState displaced_thermal(double variance, cplx center);

/// Controlled cross-Kerr coupling of a qubit (c0 |0> + c1 |1>) with a field mode.
HybridState micro_macro_entangle(std::array<cplx, 2> amplitudes, const PhaseSpaceState &field, int mode,
                                 KerrConfig kerr);

/// Measurement in the (|0> +- |1>)/sqrt2 basis, sign = +1 or -1.
MeasurementOutcome measure_qubit(const HybridState &hybrid, int sign);

/// Conditional field state after coupling displaced_thermal(V, d) to (|0>+|1>)/sqrt2 and measuring +-.
PhaseSpaceState thermal_superposition(double variance, cplx center, double phi, int sign);

/// thermal_superposition at each phi = theta; theta = 0 returns the thermal state itself.
std::vector<PhaseSpaceState> kerr_time_series(double variance, cplx center, std::span<const double> thetas,
                                              int sign);

/// N_t {rho_th(d) x rho_th(d) +- sigma(d) x sigma(d) +- sigma(-d) x sigma(-d) + rho_th(-d) x rho_th(-d)},
/// two independent thermal integrals; phi generalizes the pi rotation of the second branch.
PhaseSpaceState two_mode_thermal_entangled(double variance, cplx center, int sign, double phi = std::numbers::pi);

enum class BellState { kPhiPlus, kPhiMinus, kPsiPlus, kPsiMinus };

const char *bell_state_name(BellState which);

PhaseSpaceState thermal_bell(BellState which, double variance, cplx center);

/// thermal_superposition(V, d, phi, sign) and a vacuum mode mixed on a 50:50 beam splitter.
PhaseSpaceState bs_entangled(double variance, cplx center, int sign, double phi = std::numbers::pi);

/// Int dP(alpha) (a|alpha> + b|-alpha>)(a* <alpha| + b* <-alpha|), renormalized.
PhaseSpaceState thermal_qubit(cplx a, cplx b, double variance, cplx center);

}  // namespace thermalcat
