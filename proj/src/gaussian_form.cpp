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

#include "thermalcat/gaussian_form.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "thermalcat/error.hpp"

namespace thermalcat {

AffineForm AffineForm::variable(Eigen::Index num_vars, Eigen::Index index, cplx scale) {
    AffineForm f(num_vars);
    f.coeffs[index] = scale;
    return f;
}

AffineForm AffineForm::conj() const {
    AffineForm f;
    f.constant = std::conj(constant);
    f.coeffs = coeffs.conjugate();
    return f;
}

AffineForm AffineForm::real() const {
    AffineForm f;
    f.constant = constant.real();
    f.coeffs = coeffs.real().cast<cplx>();
    return f;
}

AffineForm AffineForm::imag() const {
    AffineForm f;
    f.constant = constant.imag();
    f.coeffs = coeffs.imag().cast<cplx>();
    return f;
}

cplx AffineForm::operator()(const RVec &y) const {
    return constant + (coeffs.array() * y.cast<cplx>().array()).sum();
}

AffineForm &AffineForm::operator+=(const AffineForm &other) {
    constant += other.constant;
    coeffs += other.coeffs;
    return *this;
}

AffineForm &AffineForm::operator-=(const AffineForm &other) {
    constant -= other.constant;
    coeffs -= other.coeffs;
    return *this;
}

AffineForm &AffineForm::operator*=(cplx k) {
    constant *= k;
    coeffs *= k;
    return *this;
}

AffineForm operator+(AffineForm a, const AffineForm &b) { return a += b; }
AffineForm operator-(AffineForm a, const AffineForm &b) { return a -= b; }
AffineForm operator*(cplx k, AffineForm a) { return a *= k; }
AffineForm operator*(AffineForm a, cplx k) { return a *= k; }

GaussianForm::GaussianForm(Eigen::Index num_vars)
    : quadratic_(CMat::Zero(num_vars, num_vars)), linear_(CVec::Zero(num_vars)) {}

void GaussianForm::add_product(cplx k, const AffineForm &f, const AffineForm &g) {
    quadratic_ += (0.5 * k) * (f.coeffs * g.coeffs.transpose() + g.coeffs * f.coeffs.transpose());
    linear_ += k * (f.constant * g.coeffs + g.constant * f.coeffs);
    constant_ += k * f.constant * g.constant;
}

void GaussianForm::add_linear(cplx k, const AffineForm &f) {
    linear_ += k * f.coeffs;
    constant_ += k * f.constant;
}

cplx log_det_positive_real(const CMat &m) {
    if (m.rows() == 0) {
        return 0.0;
    }
    Eigen::ComplexEigenSolver<CMat> solver(m, false);
    if (solver.info() != Eigen::Success) {
        fail(ErrorCode::kNumericalFailure, "eigenvalue solver failed on Gaussian covariance");
    }
    cplx total = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        cplx lambda = solver.eigenvalues()[i];
        if (!(lambda.real() > 0.0)) {
            fail(ErrorCode::kNumericalFailure, "Gaussian integral diverges (non-positive real eigenvalue)");
        }
        total += std::log(lambda);
    }
    return total;
}

GaussianForm GaussianForm::integrate_standard_normal(Eigen::Index count) const {
    const Eigen::Index n = num_vars();
    const Eigen::Index rest = n - count;
    require(count >= 0 && count <= n, "integrate_standard_normal: bad variable count");

    CMat q_ww = quadratic_.topLeftCorner(count, count);
    CMat q_wr = quadratic_.topRightCorner(count, rest);
    CMat m = CMat::Identity(count, count) - 2.0 * q_ww;
    Eigen::PartialPivLU<CMat> lu(m);

    CVec b_w = linear_.head(count);
    CVec m_inv_b = lu.solve(b_w);
    CMat m_inv_q = lu.solve(q_wr);

    GaussianForm out(rest);
    out.quadratic_ = quadratic_.bottomRightCorner(rest, rest) + 2.0 * q_wr.transpose() * m_inv_q;
    out.quadratic_ = 0.5 * (out.quadratic_ + out.quadratic_.transpose()).eval();
    out.linear_ = linear_.tail(rest) + 2.0 * q_wr.transpose() * m_inv_b;
    out.constant_ = constant_ + 0.5 * (b_w.array() * m_inv_b.array()).sum() - 0.5 * log_det_positive_real(m);
    return out;
}

GaussianForm GaussianForm::integrate_lebesgue(Eigen::Index count) const {
    // Lebesgue integral = (2pi)^{k/2} E_w[exp(form + |w|^2/2)].
    GaussianForm shifted = *this;
    shifted.quadratic_.topLeftCorner(count, count) += 0.5 * CMat::Identity(count, count);
    GaussianForm out = shifted.integrate_standard_normal(count);
    out.constant_ += 0.5 * static_cast<double>(count) * std::log(2.0 * std::numbers::pi);
    return out;
}

cplx GaussianForm::log_expectation() const { return integrate_standard_normal(num_vars()).constant_; }

cplx GaussianForm::expectation_with_product(const AffineForm &f, const AffineForm &g) const {
    const Eigen::Index n = num_vars();
    CMat m = CMat::Identity(n, n) - 2.0 * quadratic_;
    Eigen::PartialPivLU<CMat> lu(m);
    CVec mean = lu.solve(linear_);
    CVec cov_g = lu.solve(g.coeffs);
    cplx f_mean = f.constant + (f.coeffs.array() * mean.array()).sum();
    cplx g_mean = g.constant + (g.coeffs.array() * mean.array()).sum();
    cplx cov = (f.coeffs.array() * cov_g.array()).sum();
    return std::exp(log_expectation()) * (f_mean * g_mean + cov);
}

cplx GaussianForm::expectation_with_linear(const AffineForm &f) const {
    const Eigen::Index n = num_vars();
    CMat m = CMat::Identity(n, n) - 2.0 * quadratic_;
    CVec mean = Eigen::PartialPivLU<CMat>(m).solve(linear_);
    cplx f_mean = f.constant + (f.coeffs.array() * mean.array()).sum();
    return std::exp(log_expectation()) * f_mean;
}

cplx GaussianForm::log_value(const RVec &y) const {
    CVec yc = y.cast<cplx>();
    return (yc.array() * (quadratic_ * yc).array()).sum() + (linear_.array() * yc.array()).sum() + constant_;
}

}  // namespace thermalcat
