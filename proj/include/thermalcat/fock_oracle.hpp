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

#include <span>
#include <vector>

#include "thermalcat/gaussian_form.hpp"

namespace thermalcat {

/// Truncated number-basis density matrix over modes with individual dimensions
/// (mode 0 is the most significant index). A qubit is a mode of dimension 2.
class FockDensityMatrix {
   public:
    FockDensityMatrix(std::vector<int> dims, CMat matrix, double truncation_deficit = 0.0);

    int modes() const { return static_cast<int>(dims_.size()); }
    const std::vector<int> &dims() const { return dims_; }
    int cutoff() const;
    const CMat &matrix() const { return matrix_; }
    double truncation_deficit() const { return deficit_; }
    double trace() const { return matrix_.trace().real(); }

    FockDensityMatrix tensor(const FockDensityMatrix &other) const;

   private:
    std::vector<int> dims_;
    CMat matrix_;
    double deficit_;
};

/// n_bar + |d|^2 + 10 sqrt(n_bar + |d|^2) + 20 with n_bar = (V - 1) / 2.
int default_cutoff(double variance, cplx center);

/// <m|D(gamma)|n> for m, n <= cutoff (exact, not a truncated exponential).
CMat displacement_matrix(cplx gamma, int cutoff);

/// Truncated coherent amplitudes <n|gamma>.
CVec coherent_vector(cplx gamma, int cutoff);

/// D(d) rho_thermal D(d)^dagger; throws kCutoffInsufficient when the deficit reaches 1e-10.
/// cutoff < 0 selects default_cutoff.
FockDensityMatrix thermal_fock(double variance, cplx center, int cutoff = -1);

FockDensityMatrix fock_pure(std::vector<int> dims, const CVec &vector);

/// Number-basis populations (diagonal) of one mode.
std::vector<double> fock_populations(const FockDensityMatrix &rho, int mode);

double fock_mean_photon(const FockDensityMatrix &rho, int mode);

/// (2/pi)^n Tr[rho (x)_k D(beta_k) Pi D(beta_k)^dagger] over all modes.
double fock_wigner(const FockDensityMatrix &rho, std::span<const cplx> point);

/// (2/pi) Tr_last[D(2 beta) Pi rho]: the Wigner function with the last mode fixed at beta,
/// as an operator on the remaining modes (fock_wigner of it completes the evaluation).
FockDensityMatrix fock_wigner_section(const FockDensityMatrix &rho, cplx beta);

/// Quadrature density of X_theta on `mode` (canonical convention), other modes traced.
double fock_quadrature_density(const FockDensityMatrix &rho, int mode, double angle, double x);

/// exp(i phi n_a n_b).
FockDensityMatrix fock_cross_kerr(const FockDensityMatrix &rho, int mode_a, int mode_b, double phi);

/// Qubit (c0 |0> + c1 |1>) prepended as mode 0 and coupled to field mode `mode` + 1.
FockDensityMatrix fock_controlled_kerr(const FockDensityMatrix &field, std::span<const cplx> qubit, int mode,
                                       double phi);

FockDensityMatrix fock_beam_splitter(const FockDensityMatrix &rho, int mode_i, int mode_j, double theta, double phi);
FockDensityMatrix fock_phase_shift(const FockDensityMatrix &rho, int mode, double phi);
FockDensityMatrix fock_displace(const FockDensityMatrix &rho, int mode, cplx gamma);

struct FockProjection {
    FockDensityMatrix state;  ///< normalized remaining modes
    double probability = 0.0;
    bool possible = false;
};

/// Projects the listed modes (their joint space, mode order as given) onto `vector`.
FockProjection fock_project(const FockDensityMatrix &rho, std::span<const int> subsystem, const CVec &vector);

FockDensityMatrix fock_partial_trace(const FockDensityMatrix &rho, std::span<const int> traced);

/// Probability of even total photon number on the listed modes.
double fock_parity_even(const FockDensityMatrix &rho, std::span<const int> modes);

/// Tr[rho_a rho_b].
double fock_overlap(const FockDensityMatrix &a, const FockDensityMatrix &b);

}  // namespace thermalcat
