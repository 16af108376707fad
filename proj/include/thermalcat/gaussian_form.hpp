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

#include <complex>

#include <Eigen/Dense>

namespace thermalcat {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

/// Complex-valued affine function `constant + coeffs . y` of real variables y.
struct AffineForm {
    cplx constant{0.0, 0.0};
    CVec coeffs;

    AffineForm() = default;
    explicit AffineForm(Eigen::Index num_vars) : coeffs(CVec::Zero(num_vars)) {}
    AffineForm(Eigen::Index num_vars, cplx value) : constant(value), coeffs(CVec::Zero(num_vars)) {}

    static AffineForm variable(Eigen::Index num_vars, Eigen::Index index, cplx scale = 1.0);

    Eigen::Index num_vars() const { return coeffs.size(); }

    // The variables are real, so conjugation and Re/Im act coefficient-wise.
    AffineForm conj() const;
    AffineForm real() const;
    AffineForm imag() const;
    cplx operator()(const RVec &y) const;

    AffineForm &operator+=(const AffineForm &other);
    AffineForm &operator-=(const AffineForm &other);
    AffineForm &operator*=(cplx k);
};

AffineForm operator+(AffineForm a, const AffineForm &b);
AffineForm operator-(AffineForm a, const AffineForm &b);
AffineForm operator*(cplx k, AffineForm a);
AffineForm operator*(AffineForm a, cplx k);

/// Exponent `y^T Q y + b^T y + c` of a complex Gaussian in real variables y.
///
/// Every closed-form quantity in the library (Wigner values, traces, marginals,
/// overlaps, moments) is accumulated in this form and exponentiated only once,
/// after integration. Integration is Gaussian elimination of leading variables
/// against a standard normal weight, which covers point-mass sources (zero
/// coefficients) without special cases.
class GaussianForm {
   public:
    GaussianForm() = default;
    explicit GaussianForm(Eigen::Index num_vars);

    Eigen::Index num_vars() const { return linear_.size(); }
    const CMat &quadratic() const { return quadratic_; }
    const CVec &linear() const { return linear_; }
    cplx constant() const { return constant_; }

    void add_product(cplx k, const AffineForm &f, const AffineForm &g);
    void add_linear(cplx k, const AffineForm &f);
    void add_constant(cplx k) { constant_ += k; }
    void add_quadratic(const CMat &q) { quadratic_ += q; }

    /// Integrates the first `count` variables against exp(-|w|^2/2)/(2pi)^{count/2}.
    GaussianForm integrate_standard_normal(Eigen::Index count) const;

    /// Integrates the first `count` variables with Lebesgue measure.
    GaussianForm integrate_lebesgue(Eigen::Index count) const;

    /// log E_w[exp(form(w))] with w ~ N(0, I) over all variables.
    cplx log_expectation() const;

    /// E_w[f(w) g(w) exp(form(w))] with w ~ N(0, I) over all variables.
    cplx expectation_with_product(const AffineForm &f, const AffineForm &g) const;
    cplx expectation_with_linear(const AffineForm &f) const;

    cplx log_value(const RVec &y) const;

   private:
    CMat quadratic_;
    CVec linear_;
    cplx constant_{0.0, 0.0};
};

/// Sum of log of eigenvalues of a complex symmetric matrix whose real part is
/// positive definite; this is the branch of log det continuous from identity.
cplx log_det_positive_real(const CMat &m);

}  // namespace thermalcat
