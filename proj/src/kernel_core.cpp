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

#include "thermalcat/kernel_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "kernel_forms.hpp"
#include "thermalcat/error.hpp"

namespace thermalcat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

}  // namespace

namespace detail {

KernelForms build_kernel_forms(const ThermalKernel &kernel, Eigen::Index num_vars, Eigen::Index offset) {
    const int m = kernel.num_sources();
    std::vector<AffineForm> alpha;
    alpha.reserve(m);
    for (int k = 0; k < m; ++k) {
        const ThermalSource &s = kernel.sources[k];
        double sigma = std::sqrt(std::max(0.0, (s.variance - 1.0) / 4.0));
        AffineForm f(num_vars, s.center);
        f.coeffs[offset + 2 * k] = sigma;
        f.coeffs[offset + 2 * k + 1] = kI * sigma;
        alpha.push_back(std::move(f));
    }

    KernelForms out;
    out.phase = AffineForm(num_vars);
    for (int k = 0; k < m; ++k) {
        out.phase += kernel.phase_alpha[k] * alpha[k];
        out.phase += kernel.phase_alpha_conj[k] * alpha[k].conj();
    }
    for (int i = 0; i < kernel.modes(); ++i) {
        AffineForm a(num_vars, kernel.ket_offset[i]);
        AffineForm b(num_vars, kernel.bra_offset[i]);
        for (int k = 0; k < m; ++k) {
            a += kernel.ket(i, k) * alpha[k];
            b += kernel.bra(i, k) * alpha[k];
        }
        // Constants are recombined so that ket - bra differences stay exact.
        out.ket.push_back(std::move(a));
        out.bra.push_back(std::move(b));
    }
    return out;
}

void add_overlap(GaussianForm &g, const AffineForm &a, const AffineForm &b) {
    AffineForm diff = a - b;
    g.add_product(-0.5, diff, diff.conj());
    g.add_product(0.5, b.conj(), a);
    g.add_product(-0.5, b, a.conj());
}

void add_wigner(GaussianForm &g, const AffineForm &a, const AffineForm &b, const AffineForm &beta) {
    add_overlap(g, a, b);
    g.add_product(-2.0, beta - a, (beta - b).conj());
}

void add_quadrature(GaussianForm &g, const AffineForm &a, const AffineForm &b, const AffineForm &x, double angle) {
    const cplx rot = std::exp(-kI * angle);
    AffineForm u = rot * a;
    AffineForm v = rot * b;
    AffineForm ru = u.real(), iu = u.imag(), rv = v.real(), iv = v.imag();
    const double s2 = std::numbers::sqrt2;
    AffineForm du = x - s2 * ru;
    AffineForm dv = x - s2 * rv;
    g.add_product(-0.5, du, du);
    g.add_product(-0.5, dv, dv);
    g.add_product(kI * s2, iu - iv, x);
    g.add_product(-kI, ru, iu);
    g.add_product(kI, rv, iv);
}

GaussianForm trace_exponent(const ThermalKernel &kernel) {
    const Eigen::Index n = 2 * kernel.num_sources();
    KernelForms f = build_kernel_forms(kernel, n, 0);
    GaussianForm g(n);
    g.add_linear(1.0, f.phase);
    for (int i = 0; i < kernel.modes(); ++i) {
        add_overlap(g, f.ket[i], f.bra[i]);
    }
    return g;
}

}  // namespace detail

using detail::add_overlap;
using detail::add_quadrature;
using detail::add_wigner;
using detail::build_kernel_forms;

// ---------------------------------------------------------------------------
// ThermalKernel

ThermalKernel ThermalKernel::single(double variance, cplx center, std::span<const cplx> left_scales,
                                    std::span<const cplx> right_scales, cplx weight) {
    require(left_scales.size() == right_scales.size() && !left_scales.empty(),
            "kernel scales must have equal nonzero length");
    const auto n = static_cast<Eigen::Index>(left_scales.size());
    ThermalKernel k;
    k.weight = weight;
    k.sources = {ThermalSource{variance, center}};
    k.ket = CMat(n, 1);
    k.bra = CMat(n, 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        k.ket(i, 0) = left_scales[i];
        k.bra(i, 0) = right_scales[i];
    }
    k.ket_offset = CVec::Zero(n);
    k.bra_offset = CVec::Zero(n);
    k.phase_alpha = CVec::Zero(1);
    k.phase_alpha_conj = CVec::Zero(1);
    k.validate();
    return k;
}

void ThermalKernel::validate() const {
    const auto m = static_cast<Eigen::Index>(sources.size());
    if (ket.rows() < 1 || ket.rows() != bra.rows() || ket.cols() != m || bra.cols() != m ||
        ket_offset.size() != ket.rows() || bra_offset.size() != ket.rows() || phase_alpha.size() != m ||
        phase_alpha_conj.size() != m) {
        fail(ErrorCode::kDimensionMismatch, "thermal kernel has inconsistent dimensions");
    }
    for (const ThermalSource &s : sources) {
        if (!(s.variance >= 1.0) || !std::isfinite(s.variance)) {
            fail(ErrorCode::kInvalidArgument, "thermal variance must satisfy V >= 1");
        }
    }
}

ThermalKernel ThermalKernel::adjoint() const {
    ThermalKernel k = *this;
    k.weight = std::conj(weight);
    k.ket = bra;
    k.bra = ket;
    k.ket_offset = bra_offset;
    k.bra_offset = ket_offset;
    // conj(exp(e alpha + f conj(alpha))) = exp(conj(f) alpha + conj(e) conj(alpha))
    k.phase_alpha = phase_alpha_conj.conjugate();
    k.phase_alpha_conj = phase_alpha.conjugate();
    return k;
}

bool ThermalKernel::same_structure(const ThermalKernel &other, double tol) const {
    if (modes() != other.modes() || num_sources() != other.num_sources()) {
        return false;
    }
    for (int k = 0; k < num_sources(); ++k) {
        const double scale = 1.0 + std::abs(sources[k].center);
        if (std::abs(sources[k].variance - other.sources[k].variance) > tol * sources[k].variance ||
            std::abs(sources[k].center - other.sources[k].center) > tol * scale) {
            return false;
        }
    }
    auto close = [tol](const auto &x, const auto &y) {
        return (x - y).cwiseAbs().maxCoeff() <= tol * (1.0 + x.cwiseAbs().maxCoeff());
    };
    return close(ket, other.ket) && close(bra, other.bra) && close(ket_offset, other.ket_offset) &&
           close(bra_offset, other.bra_offset) && close(phase_alpha, other.phase_alpha) &&
           close(phase_alpha_conj, other.phase_alpha_conj);
}

cplx kernel_trace(const ThermalKernel &kernel) {
    kernel.validate();
    return kernel.weight * std::exp(detail::trace_exponent(kernel).log_expectation());
}

// ---------------------------------------------------------------------------
// PhaseSpaceState

PhaseSpaceState::PhaseSpaceState(int modes, std::vector<ThermalKernel> terms) : modes_(modes), terms_(std::move(terms)) {
    require(modes >= 1, "state needs at least one mode");
    for (const ThermalKernel &k : terms_) {
        k.validate();
        if (k.modes() != modes) {
            fail(ErrorCode::kDimensionMismatch, "kernel mode count differs from state mode count");
        }
        trace_ += kernel_trace(k);
    }
}

PhaseSpaceState PhaseSpaceState::normalized() const {
    if (!(std::abs(trace_) > 1e-300)) {
        fail(ErrorCode::kNumericalFailure, "cannot normalize a state with zero trace");
    }
    PhaseSpaceState out = scaled(1.0 / trace_.real());
    return out;
}

PhaseSpaceState PhaseSpaceState::scaled(cplx factor) const {
    PhaseSpaceState out = *this;
    for (ThermalKernel &k : out.terms_) {
        k.weight *= factor;
    }
    out.trace_ = trace_ * factor;
    return out;
}

PhaseSpaceState PhaseSpaceState::merged(double tol) const {
    std::vector<ThermalKernel> out;
    for (const ThermalKernel &k : terms_) {
        auto it = std::find_if(out.begin(), out.end(), [&](const ThermalKernel &o) { return o.same_structure(k, tol); });
        if (it == out.end()) {
            out.push_back(k);
        } else {
            it->weight += k.weight;
        }
    }
    double largest = 0.0;
    for (const ThermalKernel &k : out) {
        largest = std::max(largest, std::abs(k.weight));
    }
    std::erase_if(out, [&](const ThermalKernel &k) { return std::abs(k.weight) <= 1e-14 * largest; });
    return PhaseSpaceState(modes_, std::move(out));
}

PhaseSpaceState PhaseSpaceState::tensor(const PhaseSpaceState &other) const {
    const int n1 = modes_, n2 = other.modes_;
    std::vector<ThermalKernel> out;
    out.reserve(terms_.size() * other.terms_.size());
    for (const ThermalKernel &a : terms_) {
        for (const ThermalKernel &b : other.terms_) {
            const int m1 = a.num_sources(), m2 = b.num_sources();
            ThermalKernel k;
            k.weight = a.weight * b.weight;
            k.sources = a.sources;
            k.sources.insert(k.sources.end(), b.sources.begin(), b.sources.end());
            k.ket = CMat::Zero(n1 + n2, m1 + m2);
            k.bra = CMat::Zero(n1 + n2, m1 + m2);
            k.ket.topLeftCorner(n1, m1) = a.ket;
            k.ket.bottomRightCorner(n2, m2) = b.ket;
            k.bra.topLeftCorner(n1, m1) = a.bra;
            k.bra.bottomRightCorner(n2, m2) = b.bra;
            k.ket_offset = CVec(n1 + n2);
            k.ket_offset << a.ket_offset, b.ket_offset;
            k.bra_offset = CVec(n1 + n2);
            k.bra_offset << a.bra_offset, b.bra_offset;
            k.phase_alpha = CVec(m1 + m2);
            k.phase_alpha << a.phase_alpha, b.phase_alpha;
            k.phase_alpha_conj = CVec(m1 + m2);
            k.phase_alpha_conj << a.phase_alpha_conj, b.phase_alpha_conj;
            out.push_back(std::move(k));
        }
    }
    return PhaseSpaceState(n1 + n2, std::move(out));
}

bool PhaseSpaceState::hermitian_structure(double tol) const {
    for (const ThermalKernel &k : terms_) {
        ThermalKernel adj = k.adjoint();
        bool found = std::any_of(terms_.begin(), terms_.end(), [&](const ThermalKernel &o) {
            return o.same_structure(adj, tol) && std::abs(o.weight - adj.weight) <= tol * (1.0 + std::abs(adj.weight));
        });
        if (!found) {
            return false;
        }
    }
    return true;
}

PhaseSpaceState operator+(const PhaseSpaceState &a, const PhaseSpaceState &b) {
    if (a.modes_ != b.modes_) {
        fail(ErrorCode::kDimensionMismatch, "cannot add states with different mode counts");
    }
    std::vector<ThermalKernel> terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return PhaseSpaceState(a.modes_, std::move(terms));
}

bool kernel_list_equal(const PhaseSpaceState &a, const PhaseSpaceState &b, double tol) {
    if (a.modes() != b.modes()) {
        return false;
    }
    PhaseSpaceState ma = a.merged(tol), mb = b.merged(tol);
    if (ma.terms().size() != mb.terms().size()) {
        return false;
    }
    for (const ThermalKernel &k : ma.terms()) {
        bool found = std::any_of(mb.terms().begin(), mb.terms().end(), [&](const ThermalKernel &o) {
            return o.same_structure(k, tol) && std::abs(o.weight - k.weight) <= tol * (1.0 + std::abs(k.weight));
        });
        if (!found) {
            return false;
        }
    }
    return true;
}

double quadrature_scale(QuadratureConvention convention) {
    return convention == QuadratureConvention::kRealPart ? std::numbers::sqrt2 : 1.0;
}

// ---------------------------------------------------------------------------
// Wigner function

cplx kernel_wigner(const ThermalKernel &kernel, std::span<const cplx> point) {
    kernel.validate();
    if (static_cast<int>(point.size()) != kernel.modes()) {
        fail(ErrorCode::kDimensionMismatch, "Wigner point dimension differs from kernel mode count");
    }
    const Eigen::Index n = 2 * kernel.num_sources();
    auto f = build_kernel_forms(kernel, n, 0);
    GaussianForm g(n);
    g.add_linear(1.0, f.phase);
    for (int i = 0; i < kernel.modes(); ++i) {
        add_wigner(g, f.ket[i], f.bra[i], AffineForm(n, point[i]));
    }
    return kernel.weight * std::pow(2.0 / kPi, kernel.modes()) * std::exp(g.log_expectation());
}

WignerFunction::WignerFunction(const PhaseSpaceState &state) : WignerFunction(state, [&] {
    std::vector<int> all(state.modes());
    for (int i = 0; i < state.modes(); ++i) {
        all[i] = i;
    }
    return all;
}()) {}

WignerFunction::WignerFunction(const PhaseSpaceState &state, std::vector<int> kept_modes)
    : kept_modes_(std::move(kept_modes)) {
    const int kept = static_cast<int>(kept_modes_.size());
    for (int mode : kept_modes_) {
        if (mode < 0 || mode >= state.modes()) {
            fail(ErrorCode::kDimensionMismatch, "Wigner mode index out of range");
        }
    }
    for (const ThermalKernel &k : state.terms()) {
        const Eigen::Index w = 2 * k.num_sources();
        const Eigen::Index n = w + 2 * kept;
        auto f = build_kernel_forms(k, n, 0);
        GaussianForm g(n);
        g.add_linear(1.0, f.phase);
        for (int i = 0; i < k.modes(); ++i) {
            auto pos = std::find(kept_modes_.begin(), kept_modes_.end(), i);
            if (pos == kept_modes_.end()) {
                add_overlap(g, f.ket[i], f.bra[i]);
            } else {
                const auto p = static_cast<Eigen::Index>(pos - kept_modes_.begin());
                AffineForm beta = AffineForm::variable(n, w + 2 * p) + AffineForm::variable(n, w + 2 * p + 1, kI);
                add_wigner(g, f.ket[i], f.bra[i], beta);
            }
        }
        terms_.push_back(Term{k.weight * std::pow(2.0 / kPi, kept), g.integrate_standard_normal(w)});
    }
}

cplx WignerFunction::complex_value(std::span<const cplx> point) const {
    if (static_cast<int>(point.size()) != modes()) {
        fail(ErrorCode::kDimensionMismatch, "Wigner point dimension differs from mode count");
    }
    RVec r(2 * modes());
    for (int i = 0; i < modes(); ++i) {
        r[2 * i] = point[i].real();
        r[2 * i + 1] = point[i].imag();
    }
    cplx total = 0.0;
    for (const Term &t : terms_) {
        total += t.coefficient * std::exp(t.exponent.log_value(r));
    }
    return total;
}

double WignerFunction::operator()(std::span<const cplx> point) const {
    RVec r(2 * modes());
    if (static_cast<int>(point.size()) != modes()) {
        fail(ErrorCode::kDimensionMismatch, "Wigner point dimension differs from mode count");
    }
    for (int i = 0; i < modes(); ++i) {
        r[2 * i] = point[i].real();
        r[2 * i + 1] = point[i].imag();
    }
    cplx total = 0.0;
    double magnitude = 0.0;
    for (const Term &t : terms_) {
        cplx v = t.coefficient * std::exp(t.exponent.log_value(r));
        total += v;
        magnitude += std::abs(v);
    }
    if (std::abs(total.imag()) > 1e-10 * std::max(1.0, magnitude)) {
        fail(ErrorCode::kHermiticityViolation, "Wigner function has an imaginary residue; term list is not hermitian");
    }
    return total.real();
}

double WignerFunction::at_real(std::span<const double> coords) const {
    std::vector<cplx> point(modes());
    if (static_cast<int>(coords.size()) != 2 * modes()) {
        fail(ErrorCode::kDimensionMismatch, "Wigner coordinate dimension differs from 2 * modes");
    }
    for (int i = 0; i < modes(); ++i) {
        point[i] = cplx(coords[2 * i], coords[2 * i + 1]);
    }
    return (*this)(point);
}

double state_wigner(const PhaseSpaceState &state, std::span<const cplx> point) { return WignerFunction(state)(point); }

MinimumResult min_wigner(const PhaseSpaceState &state, const MinimumConfig &config) {
    WignerFunction w(state);
    return minimize_on_box([&w](std::span<const double> x) { return w.at_real(x); }, config);
}

// ---------------------------------------------------------------------------
// Marginals

namespace {

/// Int_lo^hi of the normalized Gaussian N(mu, 1/(2 alpha)) without cancellation in the tails.
double gaussian_mass(double mu, double alpha, double lo, double hi) {
    const double s = std::sqrt(alpha);
    const double zl = std::isinf(lo) ? (lo < 0 ? -INFINITY : INFINITY) : s * (lo - mu);
    const double zh = std::isinf(hi) ? (hi < 0 ? -INFINITY : INFINITY) : s * (hi - mu);
    if (zl >= 0.0) {
        return 0.5 * (std::erfc(zl) - std::erfc(zh));
    }
    if (zh <= 0.0) {
        return 0.5 * (std::erfc(-zh) - std::erfc(-zl));
    }
    return 0.5 * (std::erf(zh) - std::erf(zl));
}

}  // namespace

Marginal::Marginal(std::vector<Term> terms, QuadratureConvention convention)
    : terms_(std::move(terms)), convention_(convention) {
    for (const Term &t : terms_) {
        if (!(t.a.real() < 0.0)) {
            fail(ErrorCode::kNumericalFailure, "marginal term is not normalizable");
        }
        if (std::abs(t.a.imag()) > 1e-13 * std::abs(t.a) || std::abs(t.b.imag()) > 1e-13 * (1.0 + std::abs(t.b))) {
            all_real_ = false;
        }
    }
}

double Marginal::canonical_density(double x) const {
    cplx total = 0.0;
    for (const Term &t : terms_) {
        total += t.coefficient * std::exp((t.a * x + t.b) * x + t.c);
    }
    return total.real();
}

double Marginal::operator()(double x) const {
    const double s = quadrature_scale(convention_);
    return s * canonical_density(s * x);
}

double Marginal::canonical_integral(double lo, double hi) const {
    if (!(hi > lo)) {
        return 0.0;
    }
    if (all_real_) {
        double total = 0.0;
        for (const Term &t : terms_) {
            const double alpha = -t.a.real();
            const double mu = t.b.real() / (2.0 * alpha);
            cplx log_scale = t.c + t.b.real() * t.b.real() / (4.0 * alpha) + 0.5 * std::log(kPi / alpha);
            total += (t.coefficient * std::exp(log_scale)).real() * gaussian_mass(mu, alpha, lo, hi);
        }
        return total;
    }
    if (std::isinf(lo) && std::isinf(hi)) {
        cplx total = 0.0;
        for (const Term &t : terms_) {
            const cplx alpha = -t.a;
            total += t.coefficient * std::exp(t.c + t.b * t.b / (4.0 * alpha)) * std::sqrt(kPi / alpha);
        }
        return total.real();
    }
    // Oscillatory terms: Gauss-Kronrod panels across the support only.
    const double m = mean() * quadrature_scale(convention_);
    const double w = std::max(stddev() * quadrature_scale(convention_), 1e-300);
    lo = std::max(lo, m - 12.0 * w);
    hi = std::min(hi, m + 12.0 * w);
    if (!(hi > lo)) {
        return 0.0;
    }
    auto f = [this](double x) { return canonical_density(x); };
    const int panels = static_cast<int>(std::ceil((hi - lo) / w));
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = lo + (hi - lo) * i / panels, b = lo + (hi - lo) * (i + 1) / panels;
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
    }
    return total;
}

double Marginal::integral(double lo, double hi) const {
    const double s = quadrature_scale(convention_);
    return canonical_integral(s * lo, s * hi);
}

double Marginal::mean() const {
    cplx m0 = 0.0, m1 = 0.0;
    for (const Term &t : terms_) {
        cplx alpha = -t.a;
        cplx mu = t.b / (2.0 * alpha);
        cplx mass = t.coefficient * std::exp(t.c + t.b * t.b / (4.0 * alpha)) * std::sqrt(kPi / alpha);
        m0 += mass;
        m1 += mass * mu;
    }
    return (m1 / m0).real() / quadrature_scale(convention_);
}

double Marginal::stddev() const {
    cplx m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (const Term &t : terms_) {
        cplx alpha = -t.a;
        cplx mu = t.b / (2.0 * alpha);
        cplx mass = t.coefficient * std::exp(t.c + t.b * t.b / (4.0 * alpha)) * std::sqrt(kPi / alpha);
        m0 += mass;
        m1 += mass * mu;
        m2 += mass * (mu * mu + 1.0 / (2.0 * alpha));
    }
    const double mean = (m1 / m0).real();
    const double var = (m2 / m0).real() - mean * mean;
    return std::sqrt(std::max(var, 0.0)) / quadrature_scale(convention_);
}

Marginal marginal_distribution(const PhaseSpaceState &state, int mode, double angle, QuadratureConvention convention) {
    if (mode < 0 || mode >= state.modes()) {
        fail(ErrorCode::kDimensionMismatch, "marginal mode index out of range");
    }
    std::vector<Marginal::Term> terms;
    for (const ThermalKernel &k : state.terms()) {
        const Eigen::Index w = 2 * k.num_sources();
        const Eigen::Index n = w + 1;
        auto f = build_kernel_forms(k, n, 0);
        GaussianForm g(n);
        g.add_linear(1.0, f.phase);
        AffineForm x = AffineForm::variable(n, w);
        for (int i = 0; i < k.modes(); ++i) {
            if (i == mode) {
                add_quadrature(g, f.ket[i], f.bra[i], x, angle);
            } else {
                add_overlap(g, f.ket[i], f.bra[i]);
            }
        }
        GaussianForm r = g.integrate_standard_normal(w);
        terms.push_back(Marginal::Term{k.weight, r.quadratic()(0, 0), r.linear()[0], r.constant() - 0.5 * std::log(kPi)});
    }
    return Marginal(std::move(terms), convention);
}

FringeMetrics fringe_metrics(const PhaseSpaceState &state, int mode, double angle, QuadratureConvention convention) {
    FringeMetrics out;
    const double scale = quadrature_scale(convention);

    // Recentre on the mean amplitude so that large displacements cancel exactly
    // inside the kernel offsets instead of in the evaluated exponents.
    const cplx centroid = mean_amplitude(state, mode);
    PhaseSpaceState centred = apply_displacement(state, mode, -centroid);
    out.frame_center = std::numbers::sqrt2 * (centroid * std::exp(cplx(0.0, -angle))).real() / scale;

    Marginal marginal = marginal_distribution(centred, mode, angle, QuadratureConvention::kCanonical);
    const double mean = marginal.mean();
    const double sd = marginal.stddev();
    double lo = mean - 8.0 * sd, hi = mean + 8.0 * sd;

    double max_freq = 0.0, min_width = INFINITY;
    double best_osc_mass = -INFINITY, osc_freq = 0.0;
    for (const Marginal::Term &t : marginal.terms()) {
        const double freq = std::abs(t.b.imag()) + 2.0 * std::abs(t.a.imag()) * std::max(std::abs(lo), std::abs(hi));
        max_freq = std::max(max_freq, freq);
        min_width = std::min(min_width, 1.0 / std::sqrt(-t.a.real()));
        if (std::abs(t.b.imag()) > 0.0) {
            cplx alpha = -t.a;
            const double mass = std::log(std::abs(t.coefficient)) + (t.c + t.b * t.b / (4.0 * alpha)).real() +
                                0.5 * std::log(std::abs(kPi / alpha));
            if (mass > best_osc_mass) {
                best_osc_mass = mass;
                osc_freq = std::abs(t.b.imag());
            }
        }
    }
    double step = std::min(min_width / 16.0, (hi - lo) / 2000.0);
    if (max_freq > 0.0) {
        step = std::min(step, 2.0 * kPi / max_freq / 32.0);
    }
    const auto count = static_cast<long>(std::min(4.0e6, std::ceil((hi - lo) / step)));
    step = (hi - lo) / static_cast<double>(count);

    auto density = [&](double x) { return marginal(x); };
    std::vector<double> values(count + 1);
    for (long i = 0; i <= count; ++i) {
        values[i] = density(lo + step * static_cast<double>(i));
    }
    const double grid_max = *std::max_element(values.begin(), values.end());

    auto refine = [&](long i, bool maximize) {
        auto objective = [&](double x) { return maximize ? -density(x) : density(x); };
        auto r = boost::math::tools::brent_find_minima(objective, lo + step * static_cast<double>(i - 1),
                                                       lo + step * static_cast<double>(i + 1), 52);
        return std::pair<double, double>{r.first, maximize ? -r.second : r.second};
    };

    std::vector<std::pair<double, double>> maxima;
    for (long i = 1; i < count; ++i) {
        if (values[i] > values[i - 1] && values[i] >= values[i + 1] && values[i] >= 1e-3 * grid_max) {
            maxima.push_back(refine(i, true));
        }
    }
    out.maxima = static_cast<int>(maxima.size());
    if (osc_freq > 0.0) {
        out.fringe_spacing = 2.0 * kPi / osc_freq / scale;
    }
    if (maxima.size() < 2) {
        return out;
    }

    double i_max = 0.0;
    for (const auto &m : maxima) {
        i_max = std::max(i_max, m.second);
    }
    const long first = std::lround((maxima.front().first - lo) / step);
    const long last = std::lround((maxima.back().first - lo) / step);
    double i_min = INFINITY;
    for (long i = std::max(1L, first); i <= std::min(count - 1, last); ++i) {
        if (values[i] < values[i - 1] && values[i] <= values[i + 1]) {
            i_min = std::min(i_min, refine(i, false).second);
        }
    }
    if (!std::isfinite(i_min)) {
        return out;
    }
    if (i_min < -1e-12 * i_max) {
        fail(ErrorCode::kNumericalFailure, "marginal density is negative; kernel algebra is inconsistent");
    }
    i_min = std::max(i_min, 0.0);

    out.has_fringes = true;
    out.i_max = i_max * scale;
    out.i_min = i_min * scale;
    out.visibility = (i_max - i_min) / (i_max + i_min);
    out.maxima_spacing = (maxima.back().first - maxima.front().first) / static_cast<double>(maxima.size() - 1) / scale;
    return out;
}

// ---------------------------------------------------------------------------
// Moments and overlaps

namespace {

struct ModeExpectations {
    cplx trace = 0.0;
    cplx a = 0.0;        // Tr[a rho]
    cplx adag_a = 0.0;   // Tr[a^dagger a rho]
    cplx a2 = 0.0;       // Tr[a^2 rho]
};

ModeExpectations mode_expectations(const PhaseSpaceState &state, int mode) {
    if (mode < 0 || mode >= state.modes()) {
        fail(ErrorCode::kDimensionMismatch, "moment mode index out of range");
    }
    ModeExpectations e;
    for (const ThermalKernel &k : state.terms()) {
        const Eigen::Index n = 2 * k.num_sources();
        auto f = build_kernel_forms(k, n, 0);
        GaussianForm g = detail::trace_exponent(k);
        e.trace += k.weight * std::exp(g.log_expectation());
        e.a += k.weight * g.expectation_with_linear(f.ket[mode]);
        e.adag_a += k.weight * g.expectation_with_product(f.bra[mode].conj(), f.ket[mode]);
        e.a2 += k.weight * g.expectation_with_product(f.ket[mode], f.ket[mode]);
    }
    return e;
}

}  // namespace

cplx mean_amplitude(const PhaseSpaceState &state, int mode) {
    ModeExpectations e = mode_expectations(state, mode);
    return e.a / e.trace.real();
}

double mean_photon_number(const PhaseSpaceState &state, int mode) {
    ModeExpectations e = mode_expectations(state, mode);
    return e.adag_a.real() / e.trace.real();
}

Moments moments(const PhaseSpaceState &state, int mode, double angle) {
    ModeExpectations e = mode_expectations(state, mode);
    const double tr = e.trace.real();
    const cplx a = e.a / tr;
    const double n = e.adag_a.real() / tr;
    const cplx a2 = e.a2 / tr;
    const cplx rot = std::exp(cplx(0.0, -angle));
    Moments m;
    m.mean_photon = n;
    m.mean_amplitude = a;
    m.quadrature_mean = std::numbers::sqrt2 * (a * rot).real();
    // <X^2> = (a^2 e^{-2i theta} + h.c. + 2 a^dagger a + 1) / 2
    const double x2 = (a2 * rot * rot).real() + n + 0.5;
    m.quadrature_variance = x2 - m.quadrature_mean * m.quadrature_mean;
    m.purity = purity(state) / (tr * tr);
    return m;
}

double hs_overlap(const PhaseSpaceState &a, const PhaseSpaceState &b) {
    if (a.modes() != b.modes()) {
        fail(ErrorCode::kDimensionMismatch, "overlap of states with different mode counts");
    }
    cplx total = 0.0;
    for (const ThermalKernel &k1 : a.terms()) {
        for (const ThermalKernel &k2 : b.terms()) {
            const Eigen::Index w1 = 2 * k1.num_sources(), w2 = 2 * k2.num_sources();
            const Eigen::Index n = w1 + w2;
            auto f1 = build_kernel_forms(k1, n, 0);
            auto f2 = build_kernel_forms(k2, n, w1);
            GaussianForm g(n);
            g.add_linear(1.0, f1.phase);
            g.add_linear(1.0, f2.phase);
            for (int i = 0; i < a.modes(); ++i) {
                // Tr[|a1><b1| |a2><b2|] = <b1|a2> <b2|a1>
                add_overlap(g, f2.ket[i], f1.bra[i]);
                add_overlap(g, f1.ket[i], f2.bra[i]);
            }
            total += k1.weight * k2.weight * std::exp(g.log_expectation());
        }
    }
    return total.real();
}

double purity(const PhaseSpaceState &state) { return hs_overlap(state, state); }

// ---------------------------------------------------------------------------
// Gaussian unitaries

namespace {

void check_mode(const PhaseSpaceState &state, int mode) {
    if (mode < 0 || mode >= state.modes()) {
        fail(ErrorCode::kDimensionMismatch, "mode index out of range");
    }
}

}  // namespace

PhaseSpaceState apply_beam_splitter(const PhaseSpaceState &state, int mode_i, int mode_j, double theta, double phi) {
    check_mode(state, mode_i);
    check_mode(state, mode_j);
    require(mode_i != mode_j, "beam splitter needs two distinct modes");
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    const cplx e = std::exp(cplx(0.0, phi));
    // |x>_i |y>_j -> |c x + e s y>_i |-conj(e) s x + c y>_j
    const cplx uii = c, uij = e * s, uji = -std::conj(e) * s, ujj = c;
    std::vector<ThermalKernel> terms = state.terms();
    for (ThermalKernel &k : terms) {
        auto mix_rows = [&](CMat &m) {
            Eigen::RowVectorXcd ri = m.row(mode_i), rj = m.row(mode_j);
            m.row(mode_i) = uii * ri + uij * rj;
            m.row(mode_j) = uji * ri + ujj * rj;
        };
        auto mix_vec = [&](CVec &v) {
            cplx vi = v[mode_i], vj = v[mode_j];
            v[mode_i] = uii * vi + uij * vj;
            v[mode_j] = uji * vi + ujj * vj;
        };
        mix_rows(k.ket);
        mix_rows(k.bra);
        mix_vec(k.ket_offset);
        mix_vec(k.bra_offset);
    }
    return PhaseSpaceState(state.modes(), std::move(terms));
}

PhaseSpaceState apply_phase_shift(const PhaseSpaceState &state, int mode, double phi) {
    check_mode(state, mode);
    const cplx e = std::exp(cplx(0.0, phi));
    std::vector<ThermalKernel> terms = state.terms();
    for (ThermalKernel &k : terms) {
        k.ket.row(mode) *= e;
        k.bra.row(mode) *= e;
        k.ket_offset[mode] *= e;
        k.bra_offset[mode] *= e;
    }
    return PhaseSpaceState(state.modes(), std::move(terms));
}

PhaseSpaceState apply_displacement(const PhaseSpaceState &state, int mode, cplx gamma) {
    check_mode(state, mode);
    std::vector<ThermalKernel> terms = state.terms();
    const cplx gc = std::conj(gamma);
    for (ThermalKernel &k : terms) {
        // D|a> = exp((gamma conj(a) - conj(gamma) a) / 2) |a + gamma>, and the
        // conjugate factor on the bra side.
        for (int s = 0; s < k.num_sources(); ++s) {
            const cplx l = k.ket(mode, s), r = k.bra(mode, s);
            k.phase_alpha[s] += 0.5 * gc * (r - l);
            k.phase_alpha_conj[s] += 0.5 * gamma * (std::conj(l) - std::conj(r));
        }
        const cplx ol = k.ket_offset[mode], orr = k.bra_offset[mode];
        const cplx constant = 0.5 * (gamma * std::conj(ol) - gc * ol + gc * orr - gamma * std::conj(orr));
        k.weight *= std::exp(constant);
        k.ket_offset[mode] += gamma;
        k.bra_offset[mode] += gamma;
    }
    return PhaseSpaceState(state.modes(), std::move(terms));
}

PhaseSpaceState append_vacuum(const PhaseSpaceState &state, int count) {
    require(count >= 1, "append_vacuum needs a positive count");
    const int n = state.modes() + count;
    std::vector<ThermalKernel> terms = state.terms();
    for (ThermalKernel &k : terms) {
        const auto m = static_cast<Eigen::Index>(k.num_sources());
        CMat ket = CMat::Zero(n, m), bra = CMat::Zero(n, m);
        ket.topRows(state.modes()) = k.ket;
        bra.topRows(state.modes()) = k.bra;
        k.ket = std::move(ket);
        k.bra = std::move(bra);
        CVec ko = CVec::Zero(n), bo = CVec::Zero(n);
        ko.head(state.modes()) = k.ket_offset;
        bo.head(state.modes()) = k.bra_offset;
        k.ket_offset = std::move(ko);
        k.bra_offset = std::move(bo);
    }
    return PhaseSpaceState(n, std::move(terms));
}

// ---------------------------------------------------------------------------

double temperature_from_variance(double variance) {
    if (!(variance >= 1.0)) {
        fail(ErrorCode::kInvalidArgument, "temperature map requires V >= 1");
    }
    if (variance == 1.0) {
        return 0.0;
    }
    return 1.0 / std::log((variance + 1.0) / (variance - 1.0));
}

double variance_from_temperature(double temperature) {
    if (!(temperature >= 0.0)) {
        fail(ErrorCode::kInvalidArgument, "temperature must be nonnegative");
    }
    if (temperature == 0.0) {
        return 1.0;
    }
    // V = coth(1 / (2 tau))
    return 1.0 / std::tanh(0.5 / temperature);
}

}  // namespace thermalcat
