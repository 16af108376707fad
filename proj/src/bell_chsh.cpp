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

#include "thermalcat/bell_chsh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "thermalcat/error.hpp"
#include "thermalcat/state_factory.hpp"

namespace thermalcat {

namespace {

constexpr double kPi = std::numbers::pi;

using Params = std::array<double, 8>;

Params to_params(const ChshSettings &s) {
    return {s.alpha.real(), s.alpha.imag(), s.alpha_prime.real(), s.alpha_prime.imag(),
            s.beta.real(),  s.beta.imag(),  s.beta_prime.real(),  s.beta_prime.imag()};
}

cplx clamp_radius(cplx z, double radius) {
    const double r = std::abs(z);
    return r > radius ? z * (radius / r) : z;
}

ChshSettings to_settings(const double *p, double radius) {
    ChshSettings s;
    s.alpha = clamp_radius({p[0], p[1]}, radius);
    s.alpha_prime = clamp_radius({p[2], p[3]}, radius);
    s.beta = clamp_radius({p[4], p[5]}, radius);
    s.beta_prime = clamp_radius({p[6], p[7]}, radius);
    return s;
}

struct Objective {
    const WignerFunction *wigner;
    double radius;
};

double negative_abs_chsh(const gsl_vector *v, void *params) {
    auto *o = static_cast<Objective *>(params);
    const double b = chsh_signed(*o->wigner, to_settings(v->data, o->radius));
    return std::isfinite(b) ? -std::abs(b) : GSL_POSINF;
}

struct LocalResult {
    Params point;
    double value;
    bool converged;
};

LocalResult simplex(const WignerFunction &w, const Params &start, double step, double radius, const ChshConfig &config) {
    Objective obj{&w, radius};
    gsl_multimin_function func{&negative_abs_chsh, 8, &obj};
    gsl_vector *x = gsl_vector_alloc(8);
    gsl_vector *steps = gsl_vector_alloc(8);
    for (size_t i = 0; i < 8; ++i) {
        gsl_vector_set(x, i, start[i]);
        gsl_vector_set(steps, i, step);
    }
    gsl_multimin_fminimizer *s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 8);
    gsl_multimin_fminimizer_set(s, &func, x, steps);
    bool converged = false;
    for (int it = 0; it < config.max_iterations; ++it) {
        if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) {
            break;
        }
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), config.simplex_tolerance) == GSL_SUCCESS) {
            converged = true;
            break;
        }
    }
    LocalResult r;
    ChshSettings best = to_settings(s->x->data, radius);
    r.point = to_params(best);
    r.value = std::abs(chsh_signed(w, best));
    r.converged = converged;
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(steps);
    gsl_vector_free(x);
    return r;
}

double typical_scale(const Params &p, double radius) {
    double m = 0.0;
    for (double v : p) {
        m = std::max(m, std::abs(v));
    }
    return std::max({0.2 * m, 1e-3 * radius, 1e-4});
}

}  // namespace

double chsh_signed(const WignerFunction &w, const ChshSettings &s) {
    if (w.modes() != 2) {
        fail(ErrorCode::kDimensionMismatch, "CHSH needs a two-mode state");
    }
    auto at = [&w](cplx a, cplx b) {
        const cplx p[] = {a, b};
        return w(p);
    };
    const double sum = at(s.alpha, s.beta) + at(s.alpha, s.beta_prime) + at(s.alpha_prime, s.beta) -
                       at(s.alpha_prime, s.beta_prime);
    return kPi * kPi / 4.0 * sum;
}

double chsh_signed(const PhaseSpaceState &state, const ChshSettings &s) {
    if (state.modes() != 2) {
        fail(ErrorCode::kDimensionMismatch, "CHSH needs a two-mode state");
    }
    return chsh_signed(WignerFunction(state), s);
}

double chsh_value(const PhaseSpaceState &state, const ChshSettings &s) { return std::abs(chsh_signed(state, s)); }

double default_chsh_box(double variance, double center) {
    return std::max(3.0, 3.0 / std::sqrt(variance)) * (1.0 + std::abs(center) / variance);
}

std::vector<ChshSettings> cat_warm_starts(cplx amplitude0, cplx amplitude1, cplx offset0, cplx offset1) {
    std::vector<ChshSettings> out;
    if (std::abs(amplitude0) < 1e-9 || std::abs(amplitude1) < 1e-9) {
        return out;
    }
    // The cat interference term oscillates as cos(4 |a| y) along i a / |a|.
    const cplx u0 = cplx(0.0, 1.0) * amplitude0 / std::abs(amplitude0);
    const cplx u1 = cplx(0.0, 1.0) * amplitude1 / std::abs(amplitude1);
    const double k0 = 4.0 * std::abs(amplitude0), k1 = 4.0 * std::abs(amplitude1);
    // |o + a><o - a| carries the constant phase 2 Im(conj(o) a); absorb it into mode 0.
    const double phase = std::remainder(
        2.0 * (std::conj(offset0) * amplitude0).imag() + 2.0 * (std::conj(offset1) * amplitude1).imag(), 2.0 * kPi);
    const cplx base0 = offset0 + u0 * phase / k0;
    for (double s : {1.0, -1.0}) {
        ChshSettings c;
        c.alpha = base0;
        c.alpha_prime = base0 + s * u0 * (kPi / 2.0) / k0;
        c.beta = offset1 - s * u1 * (kPi / 4.0) / k1;
        c.beta_prime = offset1 + s * u1 * (kPi / 4.0) / k1;
        out.push_back(c);
    }
    return out;
}

ChshResult optimize_chsh(const PhaseSpaceState &state, const ChshConfig &config) {
    if (state.modes() != 2) {
        fail(ErrorCode::kDimensionMismatch, "CHSH optimization needs a two-mode state");
    }
    require(config.restarts >= 0 && config.max_iterations > 0, "invalid CHSH optimizer configuration");
    const double radius =
        config.box_radius > 0.0 ? config.box_radius : default_chsh_box(config.variance_hint, config.center_hint);
    WignerFunction w(state);

    ChshResult result;
    double best = -1.0;
    Params best_point{};
    bool best_converged = false;
    auto consider = [&](const LocalResult &r) {
        if (r.value > best) {
            best = r.value;
            best_point = r.point;
            best_converged = r.converged;
        }
        result.trace.push_back(best);
    };

    for (const ChshSettings &s : config.warm_starts) {
        Params p = to_params(to_settings(to_params(s).data(), radius));
        // A supplied point is never beaten by its own refinement result.
        LocalResult given{p, std::abs(chsh_signed(w, to_settings(p.data(), radius))), false};
        consider(given);
        consider(simplex(w, p, typical_scale(p, radius), radius, config));
        ++result.restarts_used;
    }

    for (int r = 0; r < config.restarts; ++r) {
        std::mt19937_64 rng(config.seed + static_cast<std::uint64_t>(r));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        Params p;
        const double log_lo = std::log(1e-3 * radius), log_hi = std::log(radius);
        for (int k = 0; k < 4; ++k) {
            const double rad = std::exp(log_lo + (log_hi - log_lo) * unit(rng));
            const double ang = 2.0 * kPi * unit(rng);
            p[2 * k] = rad * std::cos(ang);
            p[2 * k + 1] = rad * std::sin(ang);
        }
        consider(simplex(w, p, typical_scale(p, radius), radius, config));
        ++result.restarts_used;
    }
    if (best < 0.0) {
        fail(ErrorCode::kNumericalFailure, "CHSH optimizer had no starting points");
    }

    // Polish: Nelder-Mead restarted from its own optimum escapes collapsed simplices.
    for (int polish = 0; polish < 2; ++polish) {
        LocalResult r = simplex(w, best_point, typical_scale(best_point, radius) * 0.1, radius, config);
        if (r.value >= best) {
            best = r.value;
            best_point = r.point;
            best_converged = r.converged;
        }
    }

    result.argmax = to_settings(best_point.data(), radius);
    result.signed_value = chsh_signed(w, result.argmax);
    result.value = std::abs(result.signed_value);
    result.converged = best_converged;
    return result;
}

const char *chsh_family_name(ChshFamily family) {
    return family == ChshFamily::kTwoModeThermal ? "two_mode_thermal" : "bs_entangled";
}

PhaseSpaceState chsh_family_state(ChshFamily family, double variance, double center, double theta) {
    if (family == ChshFamily::kTwoModeThermal) {
        return two_mode_thermal_entangled(variance, center, 1, theta);
    }
    return bs_entangled(variance, center, 1, theta);
}

namespace {

std::vector<ChshSettings> family_warm_starts(ChshFamily family, double center, double theta) {
    const cplx e = std::exp(cplx(0.0, theta));
    if (family == ChshFamily::kTwoModeThermal) {
        const cplx a = center * (1.0 - e) / 2.0, o = center * (1.0 + e) / 2.0;
        return cat_warm_starts(a, a, o, o);
    }
    const cplx a = center * (1.0 - e) / (2.0 * std::numbers::sqrt2), o = center * (1.0 + e) / (2.0 * std::numbers::sqrt2);
    return cat_warm_starts(a, -a, o, -o);
}

}  // namespace

ChshSweep chsh_sweep(ChshFamily family, double variance, const std::vector<double> &centers,
                     const std::vector<double> &thetas, const ChshConfig &config) {
    require(!centers.empty() && !thetas.empty(), "CHSH sweep needs nonempty grids");
    ChshSweep sweep;
    std::optional<ChshSettings> previous;
    for (double d : centers) {
        for (double theta : thetas) {
            require(std::isfinite(d) && std::isfinite(theta), "CHSH sweep grid values must be finite");
            ChshConfig local = config;
            local.variance_hint = variance;
            local.center_hint = d;
            std::vector<ChshSettings> starts = family_warm_starts(family, d, theta);
            if (previous) {
                starts.push_back(*previous);
            }
            starts.insert(starts.end(), config.warm_starts.begin(), config.warm_starts.end());
            local.warm_starts = std::move(starts);
            ChshSweepRow row{family, variance, d, theta, optimize_chsh(chsh_family_state(family, variance, d, theta), local)};
            previous = row.result.argmax;
            if (!sweep.rows.empty() && row.result.value < sweep.rows.back().result.value) {
                ++sweep.decreases;
            }
            sweep.rows.push_back(std::move(row));
        }
    }
    return sweep;
}

ViolationWindow violation_window(ChshFamily family, double variance, double center, const ChshConfig &config,
                                 double resolution) {
    require(resolution > 0.0, "window resolution must be positive");
    ViolationWindow window;
    auto violates = [&](double delta) {
        ++window.evaluations;
        ChshSweep s = chsh_sweep(family, variance, {center}, {kPi - delta}, config);
        return s.rows.front().result.value > 2.0 + 1e-6;
    };
    if (!violates(0.0)) {
        return window;
    }
    double lo = 0.0, hi = kPi;
    if (violates(hi - resolution)) {
        window.half_width = hi - resolution;
        return window;
    }
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        (violates(mid) ? lo : hi) = mid;
    }
    window.half_width = lo;
    return window;
}

}  // namespace thermalcat
