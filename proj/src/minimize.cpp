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

#include <algorithm>
#include <cmath>
#include <utility>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "thermalcat/error.hpp"
#include "thermalcat/kernel_core.hpp"

namespace thermalcat {

namespace {

using Objective = std::function<double(std::span<const double>)>;

struct BoxObjective {
    const Objective *f;
    const MinimumConfig *config;
};

double box_objective(const gsl_vector *v, void *params) {
    auto *p = static_cast<BoxObjective *>(params);
    std::vector<double> x(v->size);
    for (size_t i = 0; i < v->size; ++i) {
        // Clamp to the box; the simplex may step outside.
        x[i] = std::clamp(gsl_vector_get(v, i), p->config->lower[i], p->config->upper[i]);
    }
    double value = (*p->f)(x);
    return std::isfinite(value) ? value : GSL_POSINF;
}

std::pair<std::vector<double>, double> simplex_refine(const Objective &f, const MinimumConfig &config,
                                                      std::vector<double> start, double step) {
    const size_t n = start.size();
    BoxObjective params{&f, &config};
    gsl_multimin_function func{&box_objective, n, &params};
    gsl_vector *x = gsl_vector_alloc(n);
    gsl_vector *steps = gsl_vector_alloc(n);
    for (size_t i = 0; i < n; ++i) {
        gsl_vector_set(x, i, start[i]);
        gsl_vector_set(steps, i, step * (config.upper[i] - config.lower[i]));
    }
    gsl_multimin_fminimizer *s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
    gsl_multimin_fminimizer_set(s, &func, x, steps);
    for (int it = 0; it < config.refine_iterations; ++it) {
        if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) {
            break;
        }
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-12) == GSL_SUCCESS) {
            break;
        }
    }
    std::vector<double> best(n);
    for (size_t i = 0; i < n; ++i) {
        best[i] = std::clamp(gsl_vector_get(s->x, i), config.lower[i], config.upper[i]);
    }
    double value = f(best);
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(steps);
    gsl_vector_free(x);
    return {best, value};
}

}  // namespace

MinimumResult minimize_on_box(const Objective &f, const MinimumConfig &config) {
    const size_t dim = config.lower.size();
    if (dim == 0 || config.upper.size() != dim) {
        fail(ErrorCode::kDimensionMismatch, "minimization box bounds have inconsistent dimensions");
    }
    for (size_t i = 0; i < dim; ++i) {
        require(config.upper[i] > config.lower[i], "minimization box must have positive extent");
    }
    require(config.resolution >= 2, "grid resolution must be at least 2");

    // Keep the grid near 2e5 points in higher dimensions; odd counts include the centre.
    int per_axis = config.resolution;
    while (dim > 2 && std::pow(static_cast<double>(per_axis), static_cast<double>(dim)) > 2.0e5 && per_axis > 5) {
        per_axis = per_axis * 3 / 4;
    }
    if (per_axis % 2 == 0) {
        ++per_axis;
    }

    const int starts = std::max(1, config.refine_starts);
    std::vector<std::pair<double, std::vector<double>>> best;
    std::vector<int> index(dim, 0);
    std::vector<double> x(dim);
    for (bool done = false; !done;) {
        for (size_t i = 0; i < dim; ++i) {
            x[i] = config.lower[i] + (config.upper[i] - config.lower[i]) * index[i] / (per_axis - 1);
        }
        const double v = f(x);
        if (std::isfinite(v) && (static_cast<int>(best.size()) < starts || v < best.back().first)) {
            best.emplace_back(v, x);
            std::sort(best.begin(), best.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
            if (static_cast<int>(best.size()) > starts) {
                best.pop_back();
            }
        }
        size_t axis = 0;
        while (axis < dim && ++index[axis] == per_axis) {
            index[axis++] = 0;
        }
        done = axis == dim;
    }
    if (best.empty()) {
        fail(ErrorCode::kNumericalFailure, "objective is not finite anywhere on the grid");
    }

    MinimumResult result;
    result.point = best.front().second;
    result.value = best.front().first;
    const double cell = 1.0 / (per_axis - 1);
    for (const auto &[value, point] : best) {
        auto [p, v] = simplex_refine(f, config, point, cell);
        if (v < result.value) {
            result.value = v;
            result.point = p;
        }
    }
    for (size_t i = 0; i < dim; ++i) {
        const double margin = 1e-6 * (config.upper[i] - config.lower[i]);
        if (result.point[i] - config.lower[i] < margin || config.upper[i] - result.point[i] < margin) {
            result.support_warning = true;
        }
    }
    return result;
}

}  // namespace thermalcat
