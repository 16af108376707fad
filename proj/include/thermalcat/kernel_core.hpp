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

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "thermalcat/gaussian_form.hpp"

namespace thermalcat {

/// One integration variable alpha distributed with the thermal P function
/// (2 / (pi (V - 1))) exp(-2 |alpha - d|^2 / (V - 1)); V = 1 is a point mass at d.
struct ThermalSource {
    double variance = 1.0;
    cplx center{0.0, 0.0};
};

/// Thermal kernel: weight * Int prod_k dP_k(alpha_k) exp(phase) (x)_i |a_i><b_i|
/// where every mode's ket and bra amplitudes are affine in the sources,
///   a_i = sum_k ket(i,k) alpha_k + ket_offset(i),  b_i = sum_k bra(i,k) alpha_k + bra_offset(i),
/// and phase = sum_k phase_alpha(k) alpha_k + phase_alpha_conj(k) conj(alpha_k).
///
/// A single source with unit offsets reproduces the coherent dyadic
/// Int dP |c_L alpha><c_R alpha|; several sources express products of
/// independent thermal integrals and the mode mixing of beam splitters.
/// The phase term is produced only by displacements.
struct ThermalKernel {
    cplx weight{1.0, 0.0};
    std::vector<ThermalSource> sources;
    CMat ket;
    CMat bra;
    CVec ket_offset;
    CVec bra_offset;
    CVec phase_alpha;
    CVec phase_alpha_conj;

    /// Single-source kernel with per-mode scales (the common case).
    static ThermalKernel single(double variance, cplx center, std::span<const cplx> left_scales,
                                std::span<const cplx> right_scales, cplx weight = 1.0);

    int modes() const { return static_cast<int>(ket.rows()); }
    int num_sources() const { return static_cast<int>(sources.size()); }

    /// Throws on inconsistent dimensions or V < 1.
    void validate() const;

    /// Hermitian conjugate: conjugated weight, ket and bra rows exchanged.
    ThermalKernel adjoint() const;

    /// Equality of everything but the weight.
    bool same_structure(const ThermalKernel &other, double tol = 1e-12) const;
};

/// Normalized (after normalized()) complex-weighted sum of kernels on a fixed mode count.
class PhaseSpaceState {
   public:
    PhaseSpaceState() = default;
    PhaseSpaceState(int modes, std::vector<ThermalKernel> terms);

    int modes() const { return modes_; }
    const std::vector<ThermalKernel> &terms() const { return terms_; }
    cplx trace() const { return trace_; }

    PhaseSpaceState normalized() const;
    PhaseSpaceState scaled(cplx factor) const;
    /// Structurally identical terms are summed; terms with vanishing weight dropped.
    PhaseSpaceState merged(double tol = 1e-12) const;
    PhaseSpaceState tensor(const PhaseSpaceState &other) const;

    /// Every term has a conjugate partner.
    bool hermitian_structure(double tol = 1e-10) const;

    friend PhaseSpaceState operator+(const PhaseSpaceState &a, const PhaseSpaceState &b);

   private:
    int modes_ = 0;
    std::vector<ThermalKernel> terms_;
    cplx trace_{0.0, 0.0};
};

/// Term-by-term equality after merging; weights compared to `tol`.
bool kernel_list_equal(const PhaseSpaceState &a, const PhaseSpaceState &b, double tol = 1e-10);

enum class QuadratureConvention {
    kRealPart,   ///< x = Re(alpha), p = Im(alpha)
    kCanonical,  ///< X = (a + a^dagger) / sqrt(2); the default
};

/// Factor taking an abscissa in `convention` to the canonical X; sqrt(2) for x = Re(alpha).
double quadrature_scale(QuadratureConvention convention);

cplx kernel_trace(const ThermalKernel &kernel);
cplx kernel_wigner(const ThermalKernel &kernel, std::span<const cplx> point);

/// Wigner function of a state (or of the reduced state on a subset of modes),
/// compiled into one phase-space Gaussian per kernel.
class WignerFunction {
   public:
    explicit WignerFunction(const PhaseSpaceState &state);
    WignerFunction(const PhaseSpaceState &state, std::vector<int> kept_modes);

    int modes() const { return static_cast<int>(kept_modes_.size()); }

    /// Complex sum before the hermiticity check.
    cplx complex_value(std::span<const cplx> point) const;
    /// Real value; throws kHermiticityViolation when the imaginary residue exceeds tolerance.
    double operator()(std::span<const cplx> point) const;
    /// Real coordinates (Re b_1, Im b_1, Re b_2, ...).
    double at_real(std::span<const double> coords) const;

   private:
    struct Term {
        cplx coefficient;
        GaussianForm exponent;
    };
    std::vector<int> kept_modes_;
    std::vector<Term> terms_;
};

double state_wigner(const PhaseSpaceState &state, std::span<const cplx> point);

struct MinimumConfig {
    std::vector<double> lower;
    std::vector<double> upper;
    int resolution = 101;
    int refine_iterations = 50;
    int refine_starts = 4;
    double value_tolerance = 1e-10;
};

struct MinimumResult {
    std::vector<double> point;
    double value = 0.0;
    bool support_warning = false;
};

/// Grid scan of `f` over a box followed by simplex refinement from the best grid points.
MinimumResult minimize_on_box(const std::function<double(std::span<const double>)> &f, const MinimumConfig &config);

/// Most negative Wigner value of a state inside the box (real coordinates per mode).
MinimumResult min_wigner(const PhaseSpaceState &state, const MinimumConfig &config);

/// Closed-form quadrature density: a finite sum of complex Gaussians in x.
class Marginal {
   public:
    struct Term {
        cplx coefficient;  ///< includes the kernel weight
        cplx a;            ///< exp(a x^2 + b x + c)
        cplx b;
        cplx c;
    };

    Marginal(std::vector<Term> terms, QuadratureConvention convention);

    double operator()(double x) const;
    /// Int_lo^hi P(x) dx (either bound may be infinite).
    double integral(double lo, double hi) const;
    double total() const { return integral(-INFINITY, INFINITY); }
    double cdf(double x) const { return integral(-INFINITY, x); }

    const std::vector<Term> &terms() const { return terms_; }
    QuadratureConvention convention() const { return convention_; }
    bool all_real() const { return all_real_; }

    /// Mean and standard deviation of the density.
    double mean() const;
    double stddev() const;

   private:
    double canonical_density(double x) const;
    double canonical_integral(double lo, double hi) const;

    std::vector<Term> terms_;
    QuadratureConvention convention_;
    bool all_real_ = true;
};

/// Density of the quadrature X_theta = (a e^{-i theta} + a^dagger e^{i theta}) / sqrt(2)
/// on `mode`, other modes traced out analytically.
Marginal marginal_distribution(const PhaseSpaceState &state, int mode, double angle,
                               QuadratureConvention convention = QuadratureConvention::kCanonical);

struct FringeMetrics {
    bool has_fringes = false;
    double visibility = 0.0;
    /// Period of the interference term.
    double fringe_spacing = 0.0;
    /// Mean distance between adjacent maxima of the density.
    double maxima_spacing = 0.0;
    double i_max = 0.0;
    double i_min = 0.0;
    int maxima = 0;
    /// Frame offset subtracted before the search (recentred frame).
    double frame_center = 0.0;
};

/// Visibility (I_max - I_min) / (I_max + I_min) of the marginal along `angle`.
FringeMetrics fringe_metrics(const PhaseSpaceState &state, int mode, double angle,
                             QuadratureConvention convention = QuadratureConvention::kCanonical);

struct Moments {
    double mean_photon = 0.0;
    cplx mean_amplitude{0.0, 0.0};
    double quadrature_mean = 0.0;
    double quadrature_variance = 0.0;
    double purity = 0.0;
};

/// Closed-form moments; quadrature in the canonical convention.
Moments moments(const PhaseSpaceState &state, int mode, double angle = 0.0);
double mean_photon_number(const PhaseSpaceState &state, int mode);
cplx mean_amplitude(const PhaseSpaceState &state, int mode);

/// Tr[rho_a rho_b].
double hs_overlap(const PhaseSpaceState &a, const PhaseSpaceState &b);
double purity(const PhaseSpaceState &state);

/// exp[theta/2 (e^{i phi} a_i^dagger a_j - e^{-i phi} a_j^dagger a_i)];
/// theta = pi/2, phi = 0 maps |alpha>|0> to |alpha/sqrt2>|-alpha/sqrt2>.
PhaseSpaceState apply_beam_splitter(const PhaseSpaceState &state, int mode_i, int mode_j, double theta, double phi);
PhaseSpaceState apply_phase_shift(const PhaseSpaceState &state, int mode, double phi);
PhaseSpaceState apply_displacement(const PhaseSpaceState &state, int mode, cplx gamma);

/// Vacuum modes appended after the existing ones.
PhaseSpaceState append_vacuum(const PhaseSpaceState &state, int count = 1);

/// tau / (hbar nu) = 1 / ln((V + 1) / (V - 1)); zero at V = 1.
double temperature_from_variance(double variance);
double variance_from_temperature(double temperature);

}  // namespace thermalcat
