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

double thermal_wigner(double V, cplx d, cplx alpha) {
    return 2.0 / (kPi * V) * std::exp(-2.0 * std::norm(alpha - d) / V);
}

TEST(KernelCore, DisplacedThermalWignerIsGaussian) {
    for (double V : {1.0, 3.0, 40.0}) {
        const cplx d(1.5, -0.7);
        const PhaseSpaceState s = displaced_thermal(V, d);
        EXPECT_NEAR(s.trace().real(), 1.0, 1e-14);
        for (cplx a : {cplx(0.0, 0.0), cplx(1.0, 0.3), cplx(-2.0, 4.0)}) {
            const cplx p[] = {a};
            EXPECT_NEAR(state_wigner(s, p), thermal_wigner(V, d, a), 1e-14);
        }
    }
}

TEST(KernelCore, PurityAndOverlap) {
    const PhaseSpaceState s = displaced_thermal(7.0, 2.0);
    EXPECT_NEAR(purity(s), 1.0 / 7.0, 1e-13);
    EXPECT_NEAR(hs_overlap(s, s), purity(s), 1e-13);
    // Tr[rho_1 rho_2] for thermal states of equal V separated by delta: exp(-|delta|^2/V)/V.
    const PhaseSpaceState t = displaced_thermal(7.0, cplx(2.0, 1.0));
    EXPECT_NEAR(hs_overlap(s, t), std::exp(-1.0 / 7.0) / 7.0, 1e-13);
}

TEST(KernelCore, MarginalMatchesIntegratedWigner) {
    const PhaseSpaceState s = thermal_superposition(3.0, 1.2, kPi, -1);
    const Marginal m = marginal_distribution(s, 0, 0.0, QuadratureConvention::kRealPart);
    EXPECT_NEAR(m.total(), 1.0, 1e-12);
    for (double x : {-1.5, -0.2, 0.0, 0.9}) {
        // Midpoint rule over p on a wide window; the integrand is smooth and decays as a Gaussian.
        double sum = 0.0;
        const int n = 4000;
        const double half = 12.0, h = 2.0 * half / n;
        for (int i = 0; i < n; ++i) {
            const cplx p[] = {cplx(x, -half + (i + 0.5) * h)};
            sum += state_wigner(s, p) * h;
        }
        EXPECT_NEAR(m(x), sum, 1e-10);
    }
}

TEST(KernelCore, QuadratureConventionsDifferByScale) {
    const PhaseSpaceState s = displaced_thermal(2.0, 1.0);
    const Marginal real = marginal_distribution(s, 0, 0.3, QuadratureConvention::kRealPart);
    const Marginal canon = marginal_distribution(s, 0, 0.3, QuadratureConvention::kCanonical);
    EXPECT_NEAR(quadrature_scale(QuadratureConvention::kRealPart), std::numbers::sqrt2, 1e-15);
    EXPECT_NEAR(real(0.4), std::numbers::sqrt2 * canon(std::numbers::sqrt2 * 0.4), 1e-14);
    EXPECT_NEAR(canon.mean(), std::numbers::sqrt2 * std::cos(0.3), 1e-13);
    EXPECT_NEAR(canon.stddev(), 1.0, 1e-13);  // V / 2 in canonical units
}

TEST(KernelCore, MomentsOfThermalState) {
    const PhaseSpaceState s = displaced_thermal(5.0, cplx(1.0, 2.0));
    EXPECT_NEAR(mean_photon_number(s, 0), 2.0 + 5.0, 1e-12);
    const cplx a = mean_amplitude(s, 0);
    EXPECT_NEAR(a.real(), 1.0, 1e-13);
    EXPECT_NEAR(a.imag(), 2.0, 1e-13);
    EXPECT_NEAR(moments(s, 0, 0.0).quadrature_variance, 2.5, 1e-12);
}

TEST(KernelCore, GaussianChannelsActOnCentres) {
    const PhaseSpaceState s = displaced_thermal(2.0, 1.0).tensor(displaced_thermal(3.0, cplx(0.0, 1.0)));
    const PhaseSpaceState d = apply_displacement(s, 1, cplx(0.5, 0.5));
    const cplx p[] = {cplx(1.0, 0.0), cplx(0.5, 1.5)};
    EXPECT_NEAR(state_wigner(d, p), thermal_wigner(2.0, 1.0, p[0]) * thermal_wigner(3.0, cplx(0.5, 1.5), p[1]), 1e-14);

    const PhaseSpaceState r = apply_phase_shift(displaced_thermal(2.0, 1.0), 0, kPi / 2.0);
    const cplx m = mean_amplitude(r, 0);
    EXPECT_NEAR(std::abs(m), 1.0, 1e-13);
    EXPECT_NEAR(std::abs(std::arg(m)), kPi / 2.0, 1e-12);

    // Equal-variance inputs stay a product under a beam splitter.
    const PhaseSpaceState pair = displaced_thermal(2.0, 1.0).tensor(displaced_thermal(2.0, -1.0));
    const PhaseSpaceState mixed = apply_beam_splitter(pair, 0, 1, kPi / 2.0, 0.0);
    EXPECT_NEAR(mixed.trace().real(), 1.0, 1e-13);
    EXPECT_NEAR(purity(mixed), purity(pair), 1e-13);
    EXPECT_NEAR(std::abs(mean_amplitude(mixed, 0)) + std::abs(mean_amplitude(mixed, 1)), std::numbers::sqrt2,
                1e-12);
}

TEST(KernelCore, MergeIsIdempotent) {
    const PhaseSpaceState s = thermal_superposition(4.0, 1.0, kPi / 3.0, 1);
    EXPECT_TRUE(kernel_list_equal(s, s.merged()));
    EXPECT_TRUE(s.hermitian_structure());
    const PhaseSpaceState doubled = (s + s).merged();
    EXPECT_NEAR(doubled.trace().real(), 2.0, 1e-12);
}

TEST(KernelCore, MinimizeOnBoxFindsInteriorMinimum) {
    MinimumConfig cfg;
    cfg.lower = {-2.0, -2.0};
    cfg.upper = {2.0, 2.0};
    cfg.resolution = 21;
    const MinimumResult r = minimize_on_box(
        [](std::span<const double> x) { return std::pow(x[0] - 0.37, 2) + 2.0 * std::pow(x[1] + 1.1, 2) - 3.0; }, cfg);
    EXPECT_NEAR(r.value, -3.0, 1e-10);
    EXPECT_NEAR(r.point[0], 0.37, 1e-5);
    EXPECT_NEAR(r.point[1], -1.1, 1e-5);
    EXPECT_FALSE(r.support_warning);
}

TEST(KernelCore, FringeSpacingIndependentOfVariance) {
    const double d = 300.0;
    const FringeMetrics cat = fringe_metrics(thermal_superposition(1.0, d, kPi, -1), 0, kPi / 2.0,
                                             QuadratureConvention::kRealPart);
    const FringeMetrics hot = fringe_metrics(thermal_superposition(1000.0, d, kPi, -1), 0, kPi / 2.0,
                                             QuadratureConvention::kRealPart);
    EXPECT_NEAR(cat.fringe_spacing, kPi / (2.0 * d), 1e-15);
    EXPECT_NEAR(hot.fringe_spacing / cat.fringe_spacing, 1.0, 1e-12);
    EXPECT_NEAR(hot.visibility, 1.0, 1e-12);
}

TEST(KernelCore, RejectsInvalidInput) {
    try {
        displaced_thermal(0.5, 0.0);
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    }
    const PhaseSpaceState s = displaced_thermal(1.0, 0.0);
    EXPECT_THROW(marginal_distribution(s, 3, 0.0), Error);
    EXPECT_THROW(apply_beam_splitter(s, 0, 1, 0.1, 0.0), Error);
}

TEST(KernelCore, TemperatureRoundTrip) {
    for (double V : {1.5, 10.0, 1e4}) {
        EXPECT_NEAR(variance_from_temperature(temperature_from_variance(V)), V, 1e-9 * V);
    }
}

}  // namespace
}  // namespace thermalcat
