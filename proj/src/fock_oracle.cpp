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

#include "thermalcat/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "thermalcat/error.hpp"

namespace thermalcat {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Index product(const std::vector<int> &dims) {
    Eigen::Index p = 1;
    for (int d : dims) {
        p *= d;
    }
    return p;
}

void check_mode(const FockDensityMatrix &rho, int mode) {
    if (mode < 0 || mode >= rho.modes()) {
        fail(ErrorCode::kDimensionMismatch, "Fock mode index out of range");
    }
}

/// Index bookkeeping for splitting the modes into a subset S and the rest R.
struct Split {
    std::vector<int> rest_dims;
    std::vector<Eigen::Index> subset_offset;  // full-index contribution of each joint subset index
    std::vector<Eigen::Index> rest_offset;    // full-index contribution of each rest index
};

Split split_modes(const std::vector<int> &dims, std::span<const int> subset) {
    const int n = static_cast<int>(dims.size());
    std::vector<Eigen::Index> stride(n);
    Eigen::Index s = 1;
    for (int k = n - 1; k >= 0; --k) {
        stride[k] = s;
        s *= dims[k];
    }
    std::vector<bool> in_subset(n, false);
    for (int m : subset) {
        if (m < 0 || m >= n || in_subset[m]) {
            fail(ErrorCode::kDimensionMismatch, "invalid Fock subsystem selection");
        }
        in_subset[m] = true;
    }
    std::vector<int> rest;
    for (int k = 0; k < n; ++k) {
        if (!in_subset[k]) {
            rest.push_back(k);
        }
    }
    // Mixed-radix enumeration of the offsets, most significant mode first.
    auto offsets = [&](const std::vector<int> &modes) {
        std::vector<Eigen::Index> out = {0};
        for (int m : modes) {
            std::vector<Eigen::Index> next;
            next.reserve(out.size() * dims[m]);
            for (Eigen::Index base : out) {
                for (int d = 0; d < dims[m]; ++d) {
                    next.push_back(base + d * stride[m]);
                }
            }
            out = std::move(next);
        }
        return out;
    };
    Split sp;
    for (int m : rest) {
        sp.rest_dims.push_back(dims[m]);
    }
    sp.subset_offset = offsets(std::vector<int>(subset.begin(), subset.end()));
    sp.rest_offset = offsets(rest);
    return sp;
}

/// Tr_S[(A (x) 1) rho]: entry (a, b) = sum_{k,l} A(k,l) rho((l,a), (k,b)).
CMat contract(const CMat &rho, const Split &sp, const CMat &a) {
    const auto r = static_cast<Eigen::Index>(sp.rest_offset.size());
    const auto l = static_cast<Eigen::Index>(sp.subset_offset.size());
    CMat out = CMat::Zero(r, r);
    bool trailing = true;
    for (Eigen::Index i = 0; i < l && trailing; ++i) {
        trailing = sp.subset_offset[i] == i;
    }
    for (Eigen::Index y = 0; y < r && trailing; ++y) {
        trailing = sp.rest_offset[y] == y * l;
    }
    if (trailing) {
        // rho is an r x r grid of l x l blocks; out(x, y) = sum_jk a(k, j) block_xy(j, k).
        const CMat at = a.transpose();
        for (Eigen::Index y = 0; y < r; ++y) {
            for (Eigen::Index x = 0; x < r; ++x) {
                out(x, y) = rho.block(x * l, y * l, l, l).cwiseProduct(at).sum();
            }
        }
        return out;
    }
    for (Eigen::Index k = 0; k < l; ++k) {
        for (Eigen::Index j = 0; j < l; ++j) {
            const cplx c = a(k, j);
            if (c == 0.0) {
                continue;
            }
            const Eigen::Index row0 = sp.subset_offset[j], col0 = sp.subset_offset[k];
            for (Eigen::Index y = 0; y < r; ++y) {
                const Eigen::Index col = col0 + sp.rest_offset[y];
                for (Eigen::Index x = 0; x < r; ++x) {
                    out(x, y) += c * rho(row0 + sp.rest_offset[x], col);
                }
            }
        }
    }
    return out;
}

/// (A (x) 1) rho for A acting on the listed modes; A is visited by its nonzeros.
CMat apply_left(const CMat &rho, const Split &sp, const CMat &a) {
    // Row updates run on the transpose so they touch contiguous columns.
    const CMat t = rho.transpose();
    CMat out = CMat::Zero(rho.cols(), rho.rows());
    const auto l = static_cast<Eigen::Index>(sp.subset_offset.size());
    for (Eigen::Index j = 0; j < l; ++j) {
        for (Eigen::Index i = 0; i < l; ++i) {
            const cplx c = a(i, j);
            if (c == 0.0) {
                continue;
            }
            for (Eigen::Index base : sp.rest_offset) {
                out.col(base + sp.subset_offset[i]) += c * t.col(base + sp.subset_offset[j]);
            }
        }
    }
    return out.transpose();
}

FockDensityMatrix conjugate_by(const FockDensityMatrix &rho, std::span<const int> modes, const CMat &u) {
    Split sp = split_modes(rho.dims(), modes);
    CMat left = apply_left(rho.matrix(), sp, u);
    CMat both = apply_left(left.adjoint(), sp, u).adjoint();
    return FockDensityMatrix(rho.dims(), std::move(both), rho.truncation_deficit());
}

}  // namespace

FockDensityMatrix::FockDensityMatrix(std::vector<int> dims, CMat matrix, double truncation_deficit)
    : dims_(std::move(dims)), matrix_(std::move(matrix)), deficit_(truncation_deficit) {
    const Eigen::Index d = product(dims_);
    if (dims_.empty() || matrix_.rows() != d || matrix_.cols() != d) {
        fail(ErrorCode::kDimensionMismatch, "Fock matrix size differs from the product of mode dimensions");
    }
}

int FockDensityMatrix::cutoff() const { return *std::max_element(dims_.begin(), dims_.end()) - 1; }

FockDensityMatrix FockDensityMatrix::tensor(const FockDensityMatrix &other) const {
    const Eigen::Index n1 = matrix_.rows(), n2 = other.matrix_.rows();
    CMat out(n1 * n2, n1 * n2);
    for (Eigen::Index i = 0; i < n1; ++i) {
        for (Eigen::Index j = 0; j < n1; ++j) {
            out.block(i * n2, j * n2, n2, n2) = matrix_(i, j) * other.matrix_;
        }
    }
    std::vector<int> dims = dims_;
    dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
    return FockDensityMatrix(std::move(dims), std::move(out), deficit_ + other.deficit_);
}

int default_cutoff(double variance, cplx center) {
    const double n = (variance - 1.0) / 2.0 + std::norm(center);
    return static_cast<int>(std::ceil(n + 10.0 * std::sqrt(n) + 20.0));
}

CVec coherent_vector(cplx gamma, int cutoff) {
    CVec v(cutoff + 1);
    v[0] = std::exp(-0.5 * std::norm(gamma));
    for (int n = 1; n <= cutoff; ++n) {
        v[n] = v[n - 1] * gamma / std::sqrt(static_cast<double>(n));
    }
    return v;
}

CMat displacement_matrix(cplx gamma, int cutoff) {
    // <m|D|n> = sqrt(n!/m!) e^{-x/2} gamma^{m-n} L_n^{(m-n)}(x), x = |gamma|^2, for m >= n.
    // Along each diagonal the normalized Laguerre values l_k stay bounded by 1:
    //   l_{k+1} = ((2k + 1 + a - x) l_k - sqrt(k (k + a)) l_{k-1}) / sqrt((k + 1)(k + 1 + a)).
    const double x = std::norm(gamma);
    const double r = std::abs(gamma);
    const cplx u = r > 0.0 ? gamma / r : cplx(1.0, 0.0);
    CMat d(cutoff + 1, cutoff + 1);
    for (int a = 0; a <= cutoff; ++a) {
        // l_0 = e^{-x/2} x^{a/2} / sqrt(a!), a Poisson amplitude.
        double prev = 0.0;
        double cur = a == 0 ? std::exp(-0.5 * x)
                            : (r > 0.0 ? std::exp(-0.5 * x + a * std::log(r) - 0.5 * std::lgamma(a + 1.0)) : 0.0);
        const cplx lower = std::pow(u, a);
        const cplx upper = std::pow(-std::conj(u), a);
        for (int k = 0; k + a <= cutoff; ++k) {
            d(k + a, k) = lower * cur;
            d(k, k + a) = upper * cur;
            const double next = ((2.0 * k + 1.0 + a - x) * cur - std::sqrt(k * (k + static_cast<double>(a))) * prev) /
                                std::sqrt((k + 1.0) * (k + 1.0 + a));
            prev = cur;
            cur = next;
        }
    }
    return d;
}

namespace {

CMat thermal_matrix(double variance, cplx center, int cutoff) {
    const double nbar = (variance - 1.0) / 2.0;
    CVec p(cutoff + 1);
    for (int n = 0; n <= cutoff; ++n) {
        p[n] = nbar == 0.0 ? (n == 0 ? 1.0 : 0.0) : std::pow(nbar, n) / std::pow(nbar + 1.0, n + 1);
    }
    CMat d = displacement_matrix(center, cutoff);
    return d * p.asDiagonal() * d.adjoint();
}

}  // namespace

FockDensityMatrix thermal_fock(double variance, cplx center, int cutoff) {
    if (!(variance >= 1.0)) {
        fail(ErrorCode::kInvalidArgument, "thermal variance must satisfy V >= 1");
    }
    const bool automatic = cutoff < 0;
    if (automatic) {
        cutoff = default_cutoff(variance, center);
    }
    CMat rho = thermal_matrix(variance, center, cutoff);
    double deficit = 1.0 - rho.trace().real();
    // The heuristic is a starting point; grow until the tail is certified.
    while (automatic && !(deficit < 1e-10) && cutoff < 400) {
        cutoff += 5;
        rho = thermal_matrix(variance, center, cutoff);
        deficit = 1.0 - rho.trace().real();
    }
    if (!(deficit < 1e-10)) {
        fail(ErrorCode::kCutoffInsufficient, "Fock cutoff " + std::to_string(cutoff) +
                                                 " too small: truncation deficit " + std::to_string(deficit));
    }
    rho /= rho.trace().real();
    return FockDensityMatrix({cutoff + 1}, std::move(rho), deficit);
}

FockDensityMatrix fock_pure(std::vector<int> dims, const CVec &vector) {
    const double norm = vector.squaredNorm();
    require(norm > 0.0, "pure state vector must be nonzero");
    CMat rho = vector * vector.adjoint() / norm;
    return FockDensityMatrix(std::move(dims), std::move(rho));
}

std::vector<double> fock_populations(const FockDensityMatrix &rho, int mode) {
    check_mode(rho, mode);
    std::vector<int> others;
    for (int k = 0; k < rho.modes(); ++k) {
        if (k != mode) {
            others.push_back(k);
        }
    }
    FockDensityMatrix reduced = fock_partial_trace(rho, others);
    std::vector<double> out(reduced.matrix().rows());
    for (size_t n = 0; n < out.size(); ++n) {
        out[n] = reduced.matrix()(n, n).real();
    }
    return out;
}

double fock_mean_photon(const FockDensityMatrix &rho, int mode) {
    std::vector<double> p = fock_populations(rho, mode);
    double total = 0.0;
    for (size_t n = 0; n < p.size(); ++n) {
        total += static_cast<double>(n) * p[n];
    }
    return total;
}

double fock_wigner(const FockDensityMatrix &rho, std::span<const cplx> point) {
    if (static_cast<int>(point.size()) != rho.modes()) {
        fail(ErrorCode::kDimensionMismatch, "Wigner point dimension differs from Fock mode count");
    }
    // D(beta) Pi D(beta)^dagger = D(2 beta) Pi; contract the last mode first.
    CMat m = rho.matrix();
    std::vector<int> dims = rho.dims();
    for (int k = rho.modes() - 1; k >= 0; --k) {
        const int cutoff = dims[k] - 1;
        CMat a = displacement_matrix(2.0 * point[k], cutoff);
        for (int n = 1; n <= cutoff; n += 2) {
            a.col(n) *= -1.0;
        }
        const int last[] = {k};
        m = contract(m, split_modes(dims, last), a);
        dims.pop_back();
    }
    return std::pow(2.0 / kPi, rho.modes()) * m(0, 0).real();
}

FockDensityMatrix fock_wigner_section(const FockDensityMatrix &rho, cplx beta) {
    if (rho.modes() < 2) {
        fail(ErrorCode::kDimensionMismatch, "Wigner section needs at least two modes");
    }
    std::vector<int> dims = rho.dims();
    const int cutoff = dims.back() - 1;
    CMat a = displacement_matrix(2.0 * beta, cutoff);
    for (int n = 1; n <= cutoff; n += 2) {
        a.col(n) *= -1.0;
    }
    const int last[] = {rho.modes() - 1};
    CMat m = (2.0 / kPi) * contract(rho.matrix(), split_modes(dims, last), a);
    dims.pop_back();
    return FockDensityMatrix(std::move(dims), std::move(m));
}

double fock_quadrature_density(const FockDensityMatrix &rho, int mode, double angle, double x) {
    check_mode(rho, mode);
    std::vector<int> others;
    for (int k = 0; k < rho.modes(); ++k) {
        if (k != mode) {
            others.push_back(k);
        }
    }
    const CMat reduced = others.empty() ? rho.matrix() : fock_partial_trace(rho, others).matrix();
    const auto n = reduced.rows();
    // <n|x_theta> = e^{i n theta} psi_n(x) with Hermite functions from the stable recurrence.
    RVec psi(n);
    psi[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    if (n > 1) {
        psi[1] = std::numbers::sqrt2 * x * psi[0];
    }
    for (Eigen::Index k = 1; k + 1 < n; ++k) {
        psi[k + 1] = std::sqrt(2.0 / (k + 1)) * x * psi[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * psi[k - 1];
    }
    CVec v(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        v[k] = std::exp(cplx(0.0, angle * static_cast<double>(k))) * psi[k];
    }
    return (v.adjoint() * reduced * v)(0, 0).real();
}

FockDensityMatrix fock_cross_kerr(const FockDensityMatrix &rho, int mode_a, int mode_b, double phi) {
    check_mode(rho, mode_a);
    check_mode(rho, mode_b);
    const std::vector<int> &dims = rho.dims();
    const Eigen::Index d = rho.matrix().rows();
    CVec phase(d);
    for (Eigen::Index idx = 0; idx < d; ++idx) {
        Eigen::Index rem = idx;
        std::vector<int> digit(dims.size());
        for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
            digit[k] = static_cast<int>(rem % dims[k]);
            rem /= dims[k];
        }
        phase[idx] = std::exp(cplx(0.0, phi * digit[mode_a] * digit[mode_b]));
    }
    CMat out = phase.asDiagonal() * rho.matrix() * phase.conjugate().asDiagonal();
    return FockDensityMatrix(dims, std::move(out), rho.truncation_deficit());
}

FockDensityMatrix fock_controlled_kerr(const FockDensityMatrix &field, std::span<const cplx> qubit, int mode,
                                       double phi) {
    require(qubit.size() == 2, "control qubit needs two amplitudes");
    check_mode(field, mode);
    CVec q(2);
    q << qubit[0], qubit[1];
    FockDensityMatrix joint = fock_pure({2}, q).tensor(field);
    return fock_cross_kerr(joint, 0, mode + 1, phi);
}

FockDensityMatrix fock_beam_splitter(const FockDensityMatrix &rho, int mode_i, int mode_j, double theta, double phi) {
    check_mode(rho, mode_i);
    check_mode(rho, mode_j);
    require(mode_i != mode_j, "beam splitter needs two distinct modes");
    const int di = rho.dims()[mode_i], dj = rho.dims()[mode_j];
    CMat u = CMat::Zero(di * dj, di * dj);
    const cplx e = std::exp(cplx(0.0, phi));
    // The generator conserves n_i + n_j; exponentiate each block through H = i G.
    for (int total = 0; total <= di + dj - 2; ++total) {
        std::vector<int> ni;
        for (int a = std::max(0, total - dj + 1); a <= std::min(total, di - 1); ++a) {
            ni.push_back(a);
        }
        const auto b = static_cast<Eigen::Index>(ni.size());
        CMat g = CMat::Zero(b, b);
        for (Eigen::Index s = 0; s + 1 < b; ++s) {
            // a_i^dagger a_j |n_i, n_j> = sqrt((n_i + 1) n_j) |n_i + 1, n_j - 1>
            const double amp = std::sqrt(static_cast<double>(ni[s] + 1) * (total - ni[s]));
            g(s + 1, s) += 0.5 * theta * e * amp;
            g(s, s + 1) -= 0.5 * theta * std::conj(e) * amp;
        }
        Eigen::SelfAdjointEigenSolver<CMat> es(cplx(0.0, 1.0) * g);
        CMat block = es.eigenvectors() *
                     (es.eigenvalues().cast<cplx>() * cplx(0.0, -1.0)).array().exp().matrix().asDiagonal() *
                     es.eigenvectors().adjoint();
        for (Eigen::Index r = 0; r < b; ++r) {
            for (Eigen::Index c = 0; c < b; ++c) {
                u(ni[r] * dj + (total - ni[r]), ni[c] * dj + (total - ni[c])) = block(r, c);
            }
        }
    }
    const int modes[] = {mode_i, mode_j};
    return conjugate_by(rho, modes, u);
}

FockDensityMatrix fock_phase_shift(const FockDensityMatrix &rho, int mode, double phi) {
    check_mode(rho, mode);
    const int d = rho.dims()[mode];
    CMat u = CMat::Zero(d, d);
    for (int n = 0; n < d; ++n) {
        u(n, n) = std::exp(cplx(0.0, phi * n));
    }
    const int modes[] = {mode};
    return conjugate_by(rho, modes, u);
}

FockDensityMatrix fock_displace(const FockDensityMatrix &rho, int mode, cplx gamma) {
    check_mode(rho, mode);
    const int modes[] = {mode};
    return conjugate_by(rho, modes, displacement_matrix(gamma, rho.dims()[mode] - 1));
}

FockProjection fock_project(const FockDensityMatrix &rho, std::span<const int> subsystem, const CVec &vector) {
    Split sp = split_modes(rho.dims(), subsystem);
    if (vector.size() != static_cast<Eigen::Index>(sp.subset_offset.size())) {
        fail(ErrorCode::kDimensionMismatch, "projection vector length differs from subsystem dimension");
    }
    if (sp.rest_dims.empty()) {
        fail(ErrorCode::kDimensionMismatch, "projection must leave at least one mode");
    }
    CMat a = vector * vector.adjoint();
    CMat reduced = contract(rho.matrix(), sp, a);
    FockProjection out{FockDensityMatrix(sp.rest_dims, reduced, rho.truncation_deficit()), 0.0, false};
    out.probability = reduced.trace().real() / rho.trace();
    if (out.probability < 1e-300 || out.probability < 1e-14) {
        out.probability = 0.0;
        return out;
    }
    out.possible = true;
    out.state = FockDensityMatrix(sp.rest_dims, reduced / reduced.trace().real(), rho.truncation_deficit());
    return out;
}

FockDensityMatrix fock_partial_trace(const FockDensityMatrix &rho, std::span<const int> traced) {
    Split sp = split_modes(rho.dims(), traced);
    if (sp.rest_dims.empty()) {
        fail(ErrorCode::kDimensionMismatch, "partial trace must leave at least one mode");
    }
    const auto l = static_cast<Eigen::Index>(sp.subset_offset.size());
    return FockDensityMatrix(sp.rest_dims, contract(rho.matrix(), sp, CMat::Identity(l, l)), rho.truncation_deficit());
}

double fock_parity_even(const FockDensityMatrix &rho, std::span<const int> modes) {
    Split sp = split_modes(rho.dims(), modes);
    std::vector<int> sub_dims;
    for (int m : modes) {
        sub_dims.push_back(rho.dims()[m]);
    }
    const auto l = static_cast<Eigen::Index>(sp.subset_offset.size());
    CMat even = CMat::Zero(l, l);
    for (Eigen::Index s = 0; s < l; ++s) {
        Eigen::Index rem = s;
        int total = 0;
        for (int k = static_cast<int>(sub_dims.size()) - 1; k >= 0; --k) {
            total += static_cast<int>(rem % sub_dims[k]);
            rem /= sub_dims[k];
        }
        even(s, s) = total % 2 == 0 ? 1.0 : 0.0;
    }
    return contract(rho.matrix(), sp, even).trace().real() / rho.trace();
}

double fock_overlap(const FockDensityMatrix &a, const FockDensityMatrix &b) {
    if (a.dims() != b.dims()) {
        fail(ErrorCode::kDimensionMismatch, "Fock overlap needs equal mode dimensions");
    }
    return (a.matrix().cwiseProduct(b.matrix().transpose())).sum().real();
}

}  // namespace thermalcat
