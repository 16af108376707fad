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

#include "thermalcat/oracle_suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermalcat/error.hpp"

namespace thermalcat {

namespace {

constexpr double kPi = std::numbers::pi;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    }
    return v;
}

std::vector<double> subset(std::initializer_list<double> values, double max) {
    std::vector<double> out;
    for (double v : values) {
        if (v <= max + 1e-12) {
            out.push_back(v);
        }
    }
    return out;
}

// Qubit (q0, q1) controls a Kerr phase on the thermal mode, then is projected onto (1, sign)/sqrt2.
FockProjection fock_conditioned(double variance, double center, std::array<cplx, 2> qubit, double phi, int sign) {
    const FockDensityMatrix field = thermal_fock(variance, center);
    const FockDensityMatrix joint = fock_controlled_kerr(field, qubit, 0, phi);
    CVec v(2);
    v << 1.0 / std::numbers::sqrt2, sign / std::numbers::sqrt2;
    const int sub[] = {0};
    return fock_project(joint, sub, v);
}

// (2/pi) Tr[D(2 beta) Pi O] for O(n, m) = rho(n, m) exp(i phi (x n - y m)).
cplx phased_wigner(const CMat &rho, const CMat &displaced_parity, double phi, int x, int y) {
    const auto n = rho.rows();
    CVec u(n), v(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        u[k] = std::exp(cplx(0.0, phi * x * k));
        v[k] = std::exp(cplx(0.0, -phi * y * k));
    }
    // sum_{m,k} A(m,k) u_k rho(k,m) v_m = Tr[A diag(u) rho diag(v)]
    const CMat o = u.asDiagonal() * rho * v.asDiagonal();
    return 2.0 / kPi * (displaced_parity.cwiseProduct(o.transpose())).sum();
}

CMat displaced_parity(cplx beta, int cutoff) {
    CMat a = displacement_matrix(2.0 * beta, cutoff);
    for (int n = 1; n <= cutoff; n += 2) {
        a.col(n) *= -1.0;
    }
    return a;
}

cplx phased_trace(const CMat &rho, double phi, int x, int y) {
    cplx acc = 0.0;
    for (Eigen::Index n = 0; n < rho.rows(); ++n) {
        acc += rho(n, n) * std::exp(cplx(0.0, phi * (x - y) * n));
    }
    return acc;
}

// Field pair prepared in rho1 (x) rho2 and conditioned by (1 + s e^{i phi (n1 + n2)}) / 2.
struct FactorizedPair {
    CMat rho1, rho2;
    double phi;
    int sign;

    cplx weight(int x, int y) const { return 0.25 * std::pow(sign, x + y); }

    double norm() const {
        cplx t = 0.0;
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
                t += weight(x, y) * phased_trace(rho1, phi, x, y) * phased_trace(rho2, phi, x, y);
            }
        }
        return t.real();
    }

    FockDensityMatrix reduced_first() const {
        CMat r = CMat::Zero(rho1.rows(), rho1.cols());
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
                const cplx t2 = phased_trace(rho2, phi, x, y);
                for (Eigen::Index n = 0; n < r.rows(); ++n) {
                    for (Eigen::Index m = 0; m < r.cols(); ++m) {
                        r(n, m) += weight(x, y) * t2 * rho1(n, m) * std::exp(cplx(0.0, phi * (x * n - y * m)));
                    }
                }
            }
        }
        r /= norm();
        return FockDensityMatrix({static_cast<int>(r.rows())}, r);
    }
};

struct Grid2 {
    std::vector<cplx> first, second;
};

std::vector<Grid2> two_mode_grids(const OracleSuiteConfig &c) {
    const std::vector<double> axis = linspace(-c.grid_radius, c.grid_radius, c.grid_points);
    Grid2 re, im;
    for (double v : axis) {
        re.first.push_back({v, 0.3});
        re.second.push_back({v, -0.2});
        im.first.push_back({0.4, v});
        im.second.push_back({-0.3, v});
    }
    return {re, im};
}

double max_marginal_deviation(const PhaseSpaceState &state, const FockDensityMatrix &reduced, double center,
                              const OracleSuiteConfig &c) {
    double dev = 0.0;
    const double span = c.grid_radius + std::numbers::sqrt2 * std::abs(center);
    for (double angle : {0.0, kPi / 2.0}) {
        const Marginal m = marginal_distribution(state, 0, angle, QuadratureConvention::kCanonical);
        for (double x : linspace(-span, span, c.grid_points)) {
            dev = std::max(dev, std::abs(m(x) - fock_quadrature_density(reduced, 0, angle, x)));
        }
    }
    return dev;
}

double single_mode_wigner_deviation(const PhaseSpaceState &state, const FockDensityMatrix &fock,
                                    const OracleSuiteConfig &c) {
    const WignerFunction w(state);
    const std::vector<double> axis = linspace(-c.grid_radius, c.grid_radius, c.grid_points);
    double dev = 0.0;
    for (double x : axis) {
        for (double p : axis) {
            const cplx beta[] = {{x, p}};
            dev = std::max(dev, std::abs(w(beta) - fock_wigner(fock, beta)));
        }
    }
    return dev;
}

OracleCase single_mode_case(const std::string &name, double V, double d, double phi, int sign,
                            const PhaseSpaceState &state, const FockProjection &fock, double kernel_probability,
                            const OracleSuiteConfig &c) {
    OracleCase oc{name, V, d, phi, sign, "fock", fock.state.cutoff(), fock.state.truncation_deficit()};
    oc.wigner_deviation = single_mode_wigner_deviation(state, fock.state, c);
    oc.probability_deviation = max_marginal_deviation(state, fock.state, d, c);
    if (!std::isnan(kernel_probability)) {
        oc.probability_deviation = std::max(oc.probability_deviation, std::abs(kernel_probability - fock.probability));
    }
    return oc;
}

double factorized_wigner_deviation(const PhaseSpaceState &state, const FactorizedPair &pair,
                                   const OracleSuiteConfig &c) {
    const WignerFunction w(state);
    const double norm = pair.norm();
    const int c1 = static_cast<int>(pair.rho1.rows()) - 1, c2 = static_cast<int>(pair.rho2.rows()) - 1;
    double dev = 0.0;
    for (const Grid2 &g : two_mode_grids(c)) {
        std::vector<std::array<cplx, 4>> f1, f2;
        for (cplx b : g.first) {
            const CMat a = displaced_parity(b, c1);
            f1.push_back({phased_wigner(pair.rho1, a, pair.phi, 0, 0), phased_wigner(pair.rho1, a, pair.phi, 0, 1),
                          phased_wigner(pair.rho1, a, pair.phi, 1, 0), phased_wigner(pair.rho1, a, pair.phi, 1, 1)});
        }
        for (cplx b : g.second) {
            const CMat a = displaced_parity(b, c2);
            f2.push_back({phased_wigner(pair.rho2, a, pair.phi, 0, 0), phased_wigner(pair.rho2, a, pair.phi, 0, 1),
                          phased_wigner(pair.rho2, a, pair.phi, 1, 0), phased_wigner(pair.rho2, a, pair.phi, 1, 1)});
        }
        for (size_t i = 0; i < g.first.size(); ++i) {
            for (size_t j = 0; j < g.second.size(); ++j) {
                cplx fock = 0.0;
                for (int k = 0; k < 4; ++k) {
                    fock += pair.weight(k >> 1, k & 1) * f1[i][k] * f2[j][k];
                }
                const cplx pt[] = {g.first[i], g.second[j]};
                dev = std::max(dev, std::abs(w(pt) - fock.real() / norm));
            }
        }
    }
    return dev;
}

double dense_wigner_deviation(const PhaseSpaceState &state, const FockDensityMatrix &rho, const OracleSuiteConfig &c) {
    const WignerFunction w(state);
    double dev = 0.0;
    for (const Grid2 &g : two_mode_grids(c)) {
        for (cplx b2 : g.second) {
            const FockDensityMatrix section = fock_wigner_section(rho, b2);
            for (cplx b1 : g.first) {
                const cplx pt[] = {b1, b2};
                const cplx one[] = {b1};
                dev = std::max(dev, std::abs(w(pt) - fock_wigner(section, one)));
            }
        }
    }
    return dev;
}

double covariance_wigner_deviation(const PhaseSpaceState &state, const FockDensityMatrix &single,
                                   const OracleSuiteConfig &c) {
    const WignerFunction w(state);
    double dev = 0.0;
    for (const Grid2 &g : two_mode_grids(c)) {
        for (cplx b1 : g.first) {
            for (cplx b2 : g.second) {
                const cplx in[] = {(b1 - b2) / std::numbers::sqrt2};
                const double vac = 2.0 / kPi * std::exp(-std::norm(b1 + b2));
                const cplx pt[] = {b1, b2};
                dev = std::max(dev, std::abs(w(pt) - fock_wigner(single, in) * vac));
            }
        }
    }
    return dev;
}

bool impossible(const FockProjection &p) { return !p.possible || p.probability < 1e-12; }

}  // namespace

OracleSuiteResult run_oracle_suite(const OracleSuiteConfig &c) {
    require(c.grid_points >= 2, "oracle grid needs at least two points");
    OracleSuiteResult result;
    const double r = 1.0 / std::numbers::sqrt2;
    const std::vector<double> variances = subset({1.0, 2.0, 3.0, 5.0}, c.max_variance);
    const std::vector<double> centers = subset({0.0, 0.5, 1.0, 2.0}, c.max_center);

    for (double V : variances) {
        for (double d : centers) {
            const FockDensityMatrix thermal = thermal_fock(V, d);
            {
                OracleCase oc{"displaced_thermal", V, d, 0.0, 1, "fock", thermal.cutoff(), thermal.truncation_deficit()};
                const PhaseSpaceState s = displaced_thermal(V, d);
                oc.wigner_deviation = single_mode_wigner_deviation(s, thermal, c);
                oc.probability_deviation = max_marginal_deviation(s, thermal, d, c);
                result.cases.push_back(oc);
            }
            {
                const cplx a = 0.6, b = cplx(0.0, 0.8);
                const FockProjection f = fock_conditioned(V, d, {a, b}, kPi, 1);
                result.cases.push_back(single_mode_case("thermal_qubit", V, d, kPi, 1, thermal_qubit(a, b, V, d), f,
                                                        kNaN, c));
            }
            for (double phi : c.phis) {
                for (int sign : {1, -1}) {
                    const FockProjection f = fock_conditioned(V, d, {r, r}, phi, sign);
                    const HybridState hybrid = micro_macro_entangle({r, r}, displaced_thermal(V, d), 0, {phi});
                    const MeasurementOutcome m = measure_qubit(hybrid, sign);
                    if (!m.possible) {
                        OracleCase oc{"thermal_superposition", V, d, phi, sign, "fock", f.state.cutoff(),
                                      f.state.truncation_deficit()};
                        oc.impossible = impossible(f);
                        oc.wigner_deviation = oc.impossible ? 0.0 : INFINITY;
                        oc.probability_deviation = std::abs(f.probability);
                        result.cases.push_back(oc);
                        continue;
                    }
                    const PhaseSpaceState sup = thermal_superposition(V, d, phi, sign);
                    result.cases.push_back(
                        single_mode_case("thermal_superposition", V, d, phi, sign, sup, f, m.probability, c));

                    // Two modes under one control qubit.
                    FactorizedPair pair{thermal.matrix(), thermal.matrix(), phi, sign};
                    if (pair.norm() < 1e-12) {
                        OracleCase oc{"two_mode_thermal_entangled", V, d, phi, sign, "fock-factorized",
                                      thermal.cutoff(), thermal.truncation_deficit()};
                        oc.impossible = true;
                        result.cases.push_back(oc);
                    } else {
                        const PhaseSpaceState tm = two_mode_thermal_entangled(V, d, sign, phi);
                        OracleCase oc{"two_mode_thermal_entangled", V, d, phi, sign, "fock-factorized",
                                      thermal.cutoff(), thermal.truncation_deficit()};
                        oc.wigner_deviation = factorized_wigner_deviation(tm, pair, c);
                        oc.probability_deviation = max_marginal_deviation(tm, pair.reduced_first(), d, c);
                        result.cases.push_back(oc);
                    }

                    // Beam splitter after the superposition.
                    const PhaseSpaceState bs = bs_entangled(V, d, sign, phi);
                    OracleCase oc{"bs_entangled", V, d, phi, sign, "", f.state.cutoff(), f.state.truncation_deficit()};
                    if (f.state.cutoff() <= c.dense_cutoff_limit) {
                        oc.route = "fock-dense";
                        CVec vac = CVec::Zero(f.state.cutoff() + 1);
                        vac[0] = 1.0;
                        const FockDensityMatrix out =
                            fock_beam_splitter(f.state.tensor(fock_pure({f.state.cutoff() + 1}, vac)), 0, 1, kPi / 2.0, 0.0);
                        oc.wigner_deviation = dense_wigner_deviation(bs, out, c);
                        const int traced[] = {1};
                        oc.probability_deviation = max_marginal_deviation(bs, fock_partial_trace(out, traced), 0.0, c);
                    } else {
                        oc.route = "fock-covariance";
                        oc.wigner_deviation = covariance_wigner_deviation(bs, f.state, c);
                        oc.probability_deviation = kNaN;
                    }
                    result.cases.push_back(oc);
                }
            }

            // Thermal Bell states: Phi from the shared Kerr control at phi = pi, Psi with mode 2 phase shifted.
            const FockDensityMatrix flipped = fock_phase_shift(thermal, 0, kPi);
            for (BellState label : {BellState::kPhiPlus, BellState::kPhiMinus, BellState::kPsiPlus, BellState::kPsiMinus}) {
                const bool psi = label == BellState::kPsiPlus || label == BellState::kPsiMinus;
                const int sign = (label == BellState::kPhiPlus || label == BellState::kPsiPlus) ? 1 : -1;
                FactorizedPair pair{thermal.matrix(), psi ? flipped.matrix() : thermal.matrix(), kPi, sign};
                OracleCase oc{std::string("thermal_bell ") + bell_state_name(label), V, d, kPi, sign, "fock-factorized",
                              thermal.cutoff(), thermal.truncation_deficit()};
                if (pair.norm() < 1e-12) {
                    oc.impossible = true;
                    result.cases.push_back(oc);
                    continue;
                }
                const PhaseSpaceState bell = thermal_bell(label, V, d);
                oc.wigner_deviation = factorized_wigner_deviation(bell, pair, c);
                oc.probability_deviation = max_marginal_deviation(bell, pair.reduced_first(), d, c);
                result.cases.push_back(oc);
            }
        }
    }

    // Parity of the thermal-Bell states through the dense controlled-Kerr route.
    {
        const double V = 3.0, d = 1.0;
        const FockDensityMatrix thermal = thermal_fock(V, d);
        const FockDensityMatrix pair = thermal.tensor(thermal);
        const cplx q[] = {r, r};
        FockDensityMatrix joint = fock_controlled_kerr(pair, q, 0, kPi);
        joint = fock_cross_kerr(joint, 0, 2, kPi);
        const int sub[] = {0};
        const int both[] = {0, 1};
        for (int li = 0; li < 4; ++li) {
            const auto label = static_cast<BellState>(li);
            const bool psi = label == BellState::kPsiPlus || label == BellState::kPsiMinus;
            const int sign = (label == BellState::kPhiPlus || label == BellState::kPsiPlus) ? 1 : -1;
            CVec v(2);
            v << r, sign * r;
            FockDensityMatrix s = fock_project(joint, sub, v).state;
            if (psi) {
                s = fock_phase_shift(s, 1, kPi);
            }
            const double expected = sign > 0 ? 1.0 : 0.0;
            result.parity_fock[li] = fock_parity_even(s, both);
            const cplx origin[] = {0.0, 0.0};
            result.parity_closed_form[li] = kPi * kPi / 4.0 * state_wigner(thermal_bell(label, V, d), origin);
            result.parity_residual = std::max({result.parity_residual, std::abs(result.parity_fock[li] - expected),
                                               std::abs(result.parity_closed_form[li] - (2.0 * expected - 1.0))});
        }
    }

    for (const OracleCase &oc : result.cases) {
        result.max_wigner_deviation = std::max(result.max_wigner_deviation, oc.wigner_deviation);
        if (!std::isnan(oc.probability_deviation)) {
            result.max_probability_deviation = std::max(result.max_probability_deviation, oc.probability_deviation);
        }
    }
    result.passed = result.max_wigner_deviation < c.wigner_tolerance &&
                    result.max_probability_deviation < c.probability_tolerance &&
                    result.parity_residual < c.parity_tolerance;
    return result;
}

}  // namespace thermalcat
