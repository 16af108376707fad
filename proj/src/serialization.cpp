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

#include "thermalcat/serialization.hpp"

#include "json.hpp"

#include "thermalcat/error.hpp"

namespace thermalcat {

namespace {

using Json = nlohmann::ordered_json;

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from(const Json &j) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        fail(ErrorCode::kInvalidArgument, "complex numbers are serialized as [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json vector_json(const CVec &v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(complex_json(v[i]));
    }
    return out;
}

Json matrix_json(const CMat &m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_json(m(r, c)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

CVec vector_from(const Json &j, Eigen::Index size, const char *what) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != size) {
        fail(ErrorCode::kDimensionMismatch, std::string("kernel field '") + what + "' has the wrong length");
    }
    CVec v(size);
    for (Eigen::Index i = 0; i < size; ++i) {
        v[i] = complex_from(j[i]);
    }
    return v;
}

CMat matrix_from(const Json &j, Eigen::Index rows, Eigen::Index cols, const char *what) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
        fail(ErrorCode::kDimensionMismatch, std::string("kernel field '") + what + "' has the wrong row count");
    }
    CMat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        m.row(r) = vector_from(j[r], cols, what).transpose();
    }
    return m;
}

}  // namespace

std::string state_to_json(const PhaseSpaceState &state) {
    Json kernels = Json::array();
    for (const ThermalKernel &k : state.terms()) {
        Json sources = Json::array();
        for (const ThermalSource &s : k.sources) {
            sources.push_back({{"variance", s.variance}, {"center", complex_json(s.center)}});
        }
        kernels.push_back({{"weight", complex_json(k.weight)},
                           {"sources", std::move(sources)},
                           {"ket", matrix_json(k.ket)},
                           {"bra", matrix_json(k.bra)},
                           {"ket_offset", vector_json(k.ket_offset)},
                           {"bra_offset", vector_json(k.bra_offset)},
                           {"phase_alpha", vector_json(k.phase_alpha)},
                           {"phase_alpha_conj", vector_json(k.phase_alpha_conj)}});
    }
    Json doc = {{"version", kStateFormatVersion}, {"modes", state.modes()}, {"kernels", std::move(kernels)}};
    return doc.dump();
}

PhaseSpaceState state_from_json(std::string_view text) {
    Json doc = Json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        fail(ErrorCode::kInvalidArgument, "state document is not a JSON object");
    }
    if (doc.value("version", 0) != kStateFormatVersion) {
        fail(ErrorCode::kInvalidArgument, "unsupported state format version");
    }
    const int modes = doc.value("modes", 0);
    require(modes >= 1, "state document needs a positive mode count");
    const Json &list = doc.at("kernels");
    require(list.is_array() && !list.empty(), "state document needs a nonempty kernel list");
    std::vector<ThermalKernel> terms;
    for (const Json &kj : list) {
        ThermalKernel k;
        k.weight = complex_from(kj.at("weight"));
        for (const Json &sj : kj.at("sources")) {
            k.sources.push_back({sj.at("variance").get<double>(), complex_from(sj.at("center"))});
        }
        const auto n = static_cast<Eigen::Index>(k.sources.size());
        k.ket = matrix_from(kj.at("ket"), modes, n, "ket");
        k.bra = matrix_from(kj.at("bra"), modes, n, "bra");
        k.ket_offset = vector_from(kj.at("ket_offset"), modes, "ket_offset");
        k.bra_offset = vector_from(kj.at("bra_offset"), modes, "bra_offset");
        k.phase_alpha = vector_from(kj.at("phase_alpha"), n, "phase_alpha");
        k.phase_alpha_conj = vector_from(kj.at("phase_alpha_conj"), n, "phase_alpha_conj");
        k.validate();
        terms.push_back(std::move(k));
    }
    return PhaseSpaceState(modes, std::move(terms));
}

}  // namespace thermalcat
