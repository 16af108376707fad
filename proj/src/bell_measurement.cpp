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

#include "thermalcat/bell_measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/tools/roots.hpp>

#include "thermalcat/error.hpp"

namespace thermalcat {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<BellState, 4> kLabels = {BellState::kPhiPlus, BellState::kPhiMinus, BellState::kPsiPlus,
                                              BellState::kPsiMinus};
constexpr std::array<QubitOutcome, 4> kOutcomes = {QubitOutcome::kPlusPlus, QubitOutcome::kPlusMinus,
                                                   QubitOutcome::kMinusPlus, QubitOutcome::kMinusMinus};

HybridState bell_hybrid(BellState input, double variance, double center) {
    return dual_rail_coupling(bs1_transform(thermal_bell(input, variance, center)), 0, 1);
}

double resolve_threshold(double center, double threshold) { return threshold < 0.0 ? std::abs(center) : threshold; }

}  // namespace

const char *qubit_outcome_name(QubitOutcome outcome) {
    switch (outcome) {
        case QubitOutcome::kPlusPlus:
            return "++";
        case QubitOutcome::kPlusMinus:
            return "+-";
        case QubitOutcome::kMinusPlus:
            return "-+";
        case QubitOutcome::kMinusMinus:
            return "--";
    }
    return "?";
}

PhaseSpaceState bs1_transform(const PhaseSpaceState &bell) {
    if (bell.modes() != 2) {
        fail(ErrorCode::kDimensionMismatch, "Bell measurement expects a two-mode state");
    }
    // Mixing (1, 0) instead of (0, 1) puts (alpha - beta)/sqrt2 on mode 0.
    return apply_beam_splitter(bell, 1, 0, kPi / 2.0, 0.0);
}

HybridState dual_rail_coupling(const PhaseSpaceState &field, int mode_c, int mode_d) {
    std::vector<PhaseSpaceState> blocks;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            PhaseSpaceState b = rotate_sides(field, mode_c, kPi * (i >> 1), kPi * (j >> 1));
            b = rotate_sides(b, mode_d, kPi * (i & 1), kPi * (j & 1));
            blocks.push_back(b.scaled(0.25));
        }
    }
    return HybridState(4, std::move(blocks));
}

std::array<cplx, 4> qubit_outcome_vector(QubitOutcome outcome) {
    const double se = (outcome == QubitOutcome::kPlusPlus || outcome == QubitOutcome::kPlusMinus) ? 1.0 : -1.0;
    const double sf = (outcome == QubitOutcome::kPlusPlus || outcome == QubitOutcome::kMinusPlus) ? 1.0 : -1.0;
    return {0.5, 0.5 * sf, 0.5 * se, 0.5 * se * sf};
}

std::array<double, 4> outcome_probabilities(BellState input, double variance, double center) {
    HybridState h = bell_hybrid(input, variance, center);
    std::array<double, 4> out{};
    for (QubitOutcome o : kOutcomes) {
        out[static_cast<int>(o)] = project_qubits(h, qubit_outcome_vector(o)).probability;
    }
    return out;
}

MeasurementOutcome conditional_field_state(BellState input, double variance, double center, QubitOutcome outcome) {
    return project_qubits(bell_hybrid(input, variance, center), qubit_outcome_vector(outcome));
}

Marginal homodyne_distribution(BellState input, QubitOutcome outcome, Detector detector, double variance,
                               double center) {
    MeasurementOutcome m = conditional_field_state(input, variance, center, outcome);
    if (!m.possible) {
        fail(ErrorCode::kImpossibleOutcome, std::string("qubit outcome ") + qubit_outcome_name(outcome) +
                                                " has zero probability for input " + bell_state_name(input));
    }
    return marginal_distribution(m.state, detector == Detector::kC ? 0 : 1, 0.0, QuadratureConvention::kCanonical);
}

double distinguishability(double variance, double center, double threshold) {
    const double t = resolve_threshold(center, threshold);
    Marginal phi = homodyne_distribution(BellState::kPhiPlus, QubitOutcome::kPlusPlus, Detector::kC, variance, center);
    Marginal psi = homodyne_distribution(BellState::kPsiPlus, QubitOutcome::kPlusPlus, Detector::kC, variance, center);
    const double inside = phi.integral(-t, t);
    const double outside = psi.integral(-INFINITY, -t) + psi.integral(t, INFINITY);
    return 0.5 * (inside + outside);
}

double likelihood_threshold(double variance, double center) {
    Marginal phi = homodyne_distribution(BellState::kPhiPlus, QubitOutcome::kPlusPlus, Detector::kC, variance, center);
    Marginal psi = homodyne_distribution(BellState::kPsiPlus, QubitOutcome::kPlusPlus, Detector::kC, variance, center);
    auto f = [&](double x) { return phi(x) - psi(x); };
    const double lo = 0.0, limit = 2.0 * std::abs(center) + 10.0 * std::sqrt(variance);
    double hi = std::max(2.0 * std::abs(center), 0.5 * std::sqrt(variance));
    while (f(hi) >= 0.0 && hi < limit) {
        hi = std::min(2.0 * hi, limit);
    }
    if (!(f(lo) > 0.0 && f(hi) < 0.0)) {
        fail(ErrorCode::kNumericalFailure, "Phi and Psi densities do not cross within 2|d| + 10 sqrt(V)");
    }
    std::uintmax_t iterations = 200;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iterations);
    return 0.5 * (r.first + r.second);
}

BellState discriminate(const BellOutcomeRecord &record, double variance, double center, double threshold) {
    (void)variance;
    const double t = resolve_threshold(center, threshold);
    const bool plus_class = record.outcome == QubitOutcome::kPlusPlus || record.outcome == QubitOutcome::kMinusMinus;
    bool phi_type = std::abs(record.homodyne_x) < t;
    if (record.homodyne_x_d) {
        // Detector D must see the complementary pattern; on disagreement detector C decides.
        const bool d_phi = std::abs(*record.homodyne_x_d) >= t;
        phi_type = phi_type == d_phi ? phi_type : std::abs(record.homodyne_x) < t;
    }
    if (plus_class) {
        return phi_type ? BellState::kPhiPlus : BellState::kPsiPlus;
    }
    return phi_type ? BellState::kPhiMinus : BellState::kPsiMinus;
}

MarginalSampler::MarginalSampler(Marginal marginal) : marginal_(std::move(marginal)) {
    const double mean = marginal_.mean(), sd = marginal_.stddev();
    double lo = mean - 14.0 * sd, hi = mean + 14.0 * sd;
    // Extend to the outermost Gaussian component so multi-peaked densities are covered.
    for (const Marginal::Term &t : marginal_.terms()) {
        const double alpha = -t.a.real();
        const double mu = t.b.real() / (2.0 * alpha);
        const double w = 14.0 / std::sqrt(2.0 * alpha);
        lo = std::min(lo, mu - w);
        hi = std::max(hi, mu + w);
    }
    const int n = 4001;
    grid_.resize(n);
    cdf_.resize(n);
    for (int i = 0; i < n; ++i) {
        grid_[i] = lo + (hi - lo) * i / (n - 1);
        cdf_[i] = marginal_.cdf(grid_[i]);
    }
    // Enforce monotonicity against rounding in the closed-form sums.
    for (int i = 1; i < n; ++i) {
        cdf_[i] = std::max(cdf_[i], cdf_[i - 1]);
    }
}

double MarginalSampler::operator()(double u) const {
    const double target = u * cdf_.back() + (1.0 - u) * cdf_.front();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
    if (it == cdf_.begin()) {
        return grid_.front();
    }
    if (it == cdf_.end()) {
        return grid_.back();
    }
    const auto k = static_cast<size_t>(it - cdf_.begin());
    double a = grid_[k - 1], b = grid_[k];
    auto f = [&](double x) { return marginal_.cdf(x) - target; };
    double fa = f(a), fb = f(b);
    if (fa >= 0.0) {
        return a;
    }
    if (fb <= 0.0) {
        return b;
    }
    std::uintmax_t iterations = 100;
    auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(40),
                                               iterations);
    return 0.5 * (r.first + r.second);
}

MonteCarloResult monte_carlo_discrimination(double variance, double center, long trials_per_label,
                                            std::uint64_t seed) {
    require(trials_per_label > 0, "Monte Carlo needs a positive trial count");
    MonteCarloResult result;
    result.trials_per_label = trials_per_label;
    for (size_t li = 0; li < kLabels.size(); ++li) {
        const BellState label = kLabels[li];
        const std::array<double, 4> probs = outcome_probabilities(label, variance, center);
        std::array<std::optional<MarginalSampler>, 4> samplers;
        for (QubitOutcome o : kOutcomes) {
            if (probs[static_cast<int>(o)] > 0.0) {
                samplers[static_cast<int>(o)].emplace(
                    homodyne_distribution(label, o, Detector::kC, variance, center));
            }
        }
        std::mt19937_64 rng(seed + li);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (long t = 0; t < trials_per_label; ++t) {
            double u = unit(rng) * (probs[0] + probs[1] + probs[2] + probs[3]);
            int o = 0;
            while (o < 3 && (u >= probs[o] || probs[o] == 0.0)) {
                u -= probs[o];
                ++o;
            }
            while (!samplers[o]) {
                o = (o + 3) % 4;
            }
            BellOutcomeRecord record;
            record.outcome = static_cast<QubitOutcome>(o);
            record.homodyne_x = (*samplers[o])(unit(rng));
            const BellState decided = discriminate(record, variance, center);
            ++result.confusion[li][static_cast<size_t>(decided)];
        }
        result.accuracy[li] = static_cast<double>(result.confusion[li][static_cast<size_t>(label)]) /
                              static_cast<double>(trials_per_label);
    }
    return result;
}

PhotonSplit mean_photon_split(BellState input, double variance, double center) {
    PhaseSpaceState out = bs1_transform(thermal_bell(input, variance, center));
    PhotonSplit s;
    s.n_b = mean_photon_number(out, 0);
    s.n_a = mean_photon_number(out, 1);
    s.n_many = std::max(s.n_a, s.n_b);
    s.n_few = std::min(s.n_a, s.n_b);
    return s;
}

}  // namespace thermalcat
