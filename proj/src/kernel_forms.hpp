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

#include <vector>

#include "thermalcat/gaussian_form.hpp"
#include "thermalcat/kernel_core.hpp"

namespace thermalcat::detail {

/// Ket/bra amplitudes and phase of a kernel as affine forms over a variable
/// vector whose slots [offset, offset + 2m) hold the standardized sources.
struct KernelForms {
    std::vector<AffineForm> ket;
    std::vector<AffineForm> bra;
    AffineForm phase;
};

KernelForms build_kernel_forms(const ThermalKernel &kernel, Eigen::Index num_vars, Eigen::Index offset);

/// Adds log <b|a> = -|a - b|^2 / 2 + (conj(b) a - b conj(a)) / 2.
void add_overlap(GaussianForm &g, const AffineForm &a, const AffineForm &b);

/// Adds the exponent of W_{|a><b|}(beta) without its 2/pi prefactor.
void add_wigner(GaussianForm &g, const AffineForm &a, const AffineForm &b, const AffineForm &beta);

/// Adds log(<x_theta|a> <b|x_theta>) + log(pi)/2 with x the given form.
void add_quadrature(GaussianForm &g, const AffineForm &a, const AffineForm &b, const AffineForm &x, double angle);

/// log E[exp(phase) prod_i <b_i|a_i>] as a form over the standardized sources only.
GaussianForm trace_exponent(const ThermalKernel &kernel);

}  // namespace thermalcat::detail
