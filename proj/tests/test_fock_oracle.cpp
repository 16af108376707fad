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

#include "thermalcat/fock_oracle.hpp"
#include "thermalcat/kernel_core.hpp"
#include "thermalcat/oracle_suite.hpp"
#include "thermalcat/state_factory.hpp"

namespace thermalcat {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(FockOracle, DisplacementOfVacuumIsCoherent) {
    const cplx g(1.2, -0.4);
    const CMat d = displacement_matrix(g, 40);
    const CVec c = coherent_vector(g, 40);
    EXPECT_LT((d.col(0) - c).cwiseAbs().maxCoeff(), 1e-14);
    // D(g) D(-g) = 1 on the low-lying block.
    const CMat prod = d * displacement_matrix(-g, 40);
    EXPECT_LT((prod.topLeftCorner(10, 10) - CMat::Identity(10, 10)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FockOracle, DisplacementStableAtLargeAmplitude) {
    const cplx g(5.5, 2.0);
    const CMat d = displacement_matrix(g, 86);
    EXPECT_LT((d.col(0) - coherent_vector(g, 86)).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_NEAR(d.col(0).squaredNorm(), 1.0, 1e-12);
}

TEST(FockOracle, ThermalPopulationsAreGeometric) {
    const double V = 4.0, nbar = 1.5;
    const FockDensityMatrix rho = thermal_fock(V, 0.0, 60);
    const std::vector<double> p = fock_populations(rho, 0);
    for (int n = 0; n < 10; ++n) {
        EXPECT_NEAR(p[n], std::pow(nbar, n) / std::pow(nbar + 1.0, n + 1), 1e-13);
    }
    EXPECT_NEAR(fock_mean_photon(thermal_fock(V, cplx(1.0, 1.0)), 0), nbar + 2.0, 1e-8);
}

TEST(FockOracle, WignerOfThermalMatchesGaussian) {
    const double V = 3.0;
    const cplx d(0.8, 0.3);
    const FockDensityMatrix rho = thermal_fock(V, d);
    for (cplx a : {cplx(0.0, 0.0), cplx(0.8, 0.3), cplx(-1.0, 1.5)}) {
        const cplx p[] = {a};
        EXPECT_NEAR(fock_wigner(rho, p), 2.0 / (kPi * V) * std::exp(-2.0 * std::norm(a - d) / V), 1e-10);
    }
}

TEST(FockOracle, QuadratureDensityMatchesKernelMarginal) {
    const FockDensityMatrix rho = thermal_fock(2.0, cplx(0.5, -0.5));
    const Marginal m = marginal_distribution(displaced_thermal(2.0, cplx(0.5, -0.5)), 0, 0.4);
    for (double x : {-1.0, 0.0, 0.7, 2.0}) {
        EXPECT_NEAR(fock_quadrature_density(rho, 0, 0.4, x), m(x), 1e-10);
    }
}

TEST(FockOracle, BeamSplitterAgreesWithKernel) {
    const PhaseSpaceState pair = displaced_thermal(1.5, 0.7).tensor(displaced_thermal(1.0, cplx(0.0, -0.5)));
    const FockDensityMatrix fpair = thermal_fock(1.5, 0.7, 25).tensor(thermal_fock(1.0, cplx(0.0, -0.5), 25));
    const double theta = kPi / 3.0, phi = 0.4;
    const WignerFunction w(apply_beam_splitter(pair, 0, 1, theta, phi));
    const FockDensityMatrix out = fock_beam_splitter(fpair, 0, 1, theta, phi);
    for (auto [a, b] : {std::pair{cplx(0.0, 0.0), cplx(0.0, 0.0)}, std::pair{cplx(0.5, 0.2), cplx(-0.3, 0.4)}}) {
        const cplx p[] = {a, b};
        EXPECT_NEAR(w(p), fock_wigner(out, p), 1e-9);
    }
}

TEST(FockOracle, ControlledKerrMatchesMeasuredBranch) {
    const double r = 1.0 / std::numbers::sqrt2;
    const double phi = kPi / 2.0;
    const cplx q[] = {r, r};
    const FockDensityMatrix joint = fock_controlled_kerr(thermal_fock(2.0, 0.6), q, 0, phi);
    CVec v(2);
    v << r, -r;
    const int sub[] = {0};
    const FockProjection f = fock_project(joint, sub, v);
    const MeasurementOutcome k = measure_qubit(micro_macro_entangle({r, r}, displaced_thermal(2.0, 0.6), 0, {phi}), -1);
    EXPECT_NEAR(f.probability, k.probability, 1e-10);
    for (cplx a : {cplx(0.0, 0.0), cplx(0.3, -0.6)}) {
        const cplx p[] = {a};
        EXPECT_NEAR(fock_wigner(f.state, p), state_wigner(k.state, p), 1e-10);
    }
}

TEST(FockOracle, ReducedSuitePasses) {
    OracleSuiteConfig c;
    c.max_variance = 2.0;
    c.max_center = 0.5;
    c.grid_points = 7;
    const OracleSuiteResult r = run_oracle_suite(c);
    EXPECT_TRUE(r.passed);
    EXPECT_LT(r.max_wigner_deviation, 1e-8);
    EXPECT_LT(r.parity_residual, 1e-8);
    EXPECT_FALSE(r.cases.empty());
}

}  // namespace
}  // namespace thermalcat
