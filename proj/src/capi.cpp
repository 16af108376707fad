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

#include "thermalcat/thermalcat.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "json.hpp"
#include "thermalcat/error.hpp"
#include "thermalcat/reports.hpp"
#include "thermalcat/serialization.hpp"
#include "thermalcat/state_factory.hpp"

struct tcat_state {
    thermalcat::PhaseSpaceState value;
};

namespace {

using thermalcat::cplx;

thread_local std::string last_error;

template <typename F>
tcat_status guarded(F &&body) {
    try {
        body();
        last_error.clear();
        return TCAT_OK;
    } catch (const thermalcat::Error &e) {
        last_error = e.what();
        return static_cast<tcat_status>(e.code());
    } catch (const nlohmann::json::exception &e) {
        last_error = std::string("malformed JSON: ") + e.what();
        return TCAT_INVALID_ARGUMENT;
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
        return TCAT_INTERNAL;
    } catch (const std::exception &e) {
        last_error = e.what();
        return TCAT_INTERNAL;
    } catch (...) {
        last_error = "unknown failure";
        return TCAT_INTERNAL;
    }
}

void need(const void *p, const char *what) {
    thermalcat::require(p != nullptr, std::string(what) + " must not be null");
}

tcat_status make(tcat_state **out, auto &&build) {
    return guarded([&] {
        need(out, "output handle");
        *out = nullptr;
        *out = new tcat_state{build()};
    });
}

char *copy_string(const std::string &s) {
    char *p = static_cast<char *>(std::malloc(s.size() + 1));
    if (p == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

thermalcat::BellState to_bell(tcat_bell which) {
    switch (which) {
        case TCAT_PHI_PLUS:
            return thermalcat::BellState::kPhiPlus;
        case TCAT_PHI_MINUS:
            return thermalcat::BellState::kPhiMinus;
        case TCAT_PSI_PLUS:
            return thermalcat::BellState::kPsiPlus;
        case TCAT_PSI_MINUS:
            return thermalcat::BellState::kPsiMinus;
    }
    thermalcat::fail(thermalcat::ErrorCode::kInvalidArgument, "unknown Bell state");
}

}  // namespace

extern "C" {

const char *tcat_version(void) { return thermalcat::library_version(); }

const char *tcat_status_name(tcat_status status) {
    switch (status) {
        case TCAT_OK:
            return "ok";
        case TCAT_INVALID_ARGUMENT:
            return "invalid_argument";
        case TCAT_DIMENSION_MISMATCH:
            return "dimension_mismatch";
        case TCAT_NUMERICAL_FAILURE:
            return "numerical_failure";
        case TCAT_HERMITICITY_VIOLATION:
            return "hermiticity_violation";
        case TCAT_IMPOSSIBLE_OUTCOME:
            return "impossible_outcome";
        case TCAT_CUTOFF_INSUFFICIENT:
            return "cutoff_insufficient";
        case TCAT_IO:
            return "io";
        case TCAT_INTERNAL:
            return "internal";
    }
    return "unknown";
}

const char *tcat_last_error(void) { return last_error.c_str(); }

tcat_status tcat_displaced_thermal(double variance, double d_re, double d_im, tcat_state **out) {
    return make(out, [&] { return thermalcat::displaced_thermal(variance, cplx(d_re, d_im)); });
}

tcat_status tcat_thermal_superposition(double variance, double d_re, double d_im, double phi, int sign,
                                       tcat_state **out) {
    return make(out, [&] { return thermalcat::thermal_superposition(variance, cplx(d_re, d_im), phi, sign); });
}

tcat_status tcat_thermal_qubit(double a_re, double a_im, double b_re, double b_im, double variance, double d_re,
                               double d_im, tcat_state **out) {
    return make(out, [&] {
        return thermalcat::thermal_qubit(cplx(a_re, a_im), cplx(b_re, b_im), variance, cplx(d_re, d_im));
    });
}

tcat_status tcat_two_mode_entangled(double variance, double d_re, double d_im, int sign, double phi,
                                    tcat_state **out) {
    return make(out, [&] { return thermalcat::two_mode_thermal_entangled(variance, cplx(d_re, d_im), sign, phi); });
}

tcat_status tcat_bs_entangled(double variance, double d_re, double d_im, int sign, double phi, tcat_state **out) {
    return make(out, [&] { return thermalcat::bs_entangled(variance, cplx(d_re, d_im), sign, phi); });
}

tcat_status tcat_thermal_bell(tcat_bell which, double variance, double d_re, double d_im, tcat_state **out) {
    return make(out, [&] { return thermalcat::thermal_bell(to_bell(which), variance, cplx(d_re, d_im)); });
}

tcat_status tcat_state_from_json(const char *json, tcat_state **out) {
    return make(out, [&] {
        need(json, "json");
        return thermalcat::state_from_json(json);
    });
}

tcat_status tcat_state_to_json(const tcat_state *state, char **out) {
    return guarded([&] {
        need(state, "state");
        need(out, "output string");
        *out = copy_string(thermalcat::state_to_json(state->value));
    });
}

void tcat_state_free(tcat_state *state) { delete state; }

tcat_status tcat_state_modes(const tcat_state *state, int *out) {
    return guarded([&] {
        need(state, "state");
        need(out, "output");
        *out = state->value.modes();
    });
}

tcat_status tcat_wigner(const tcat_state *state, const double *point, size_t len, double *out) {
    return guarded([&] {
        need(state, "state");
        need(point, "point");
        need(out, "output");
        const size_t modes = static_cast<size_t>(state->value.modes());
        if (len != 2 * modes) {
            thermalcat::fail(thermalcat::ErrorCode::kDimensionMismatch, "point must hold re, im for every mode");
        }
        std::vector<cplx> p(modes);
        for (size_t i = 0; i < modes; ++i) {
            p[i] = {point[2 * i], point[2 * i + 1]};
        }
        *out = thermalcat::WignerFunction(state->value)(p);
    });
}

tcat_status tcat_marginal(const tcat_state *state, int mode, double angle, tcat_quadrature convention,
                          const double *x, size_t count, double *out) {
    return guarded([&] {
        need(state, "state");
        need(x, "x");
        need(out, "output");
        thermalcat::require(convention == TCAT_QUADRATURE_CANONICAL || convention == TCAT_QUADRATURE_REAL_PART,
                            "unknown quadrature convention");
        const auto conv = convention == TCAT_QUADRATURE_CANONICAL ? thermalcat::QuadratureConvention::kCanonical
                                                                  : thermalcat::QuadratureConvention::kRealPart;
        const thermalcat::Marginal m = thermalcat::marginal_distribution(state->value, mode, angle, conv);
        for (size_t i = 0; i < count; ++i) {
            out[i] = m(x[i]);
        }
    });
}

tcat_status tcat_purity(const tcat_state *state, double *out) {
    return guarded([&] {
        need(state, "state");
        need(out, "output");
        *out = thermalcat::purity(state->value);
    });
}

tcat_status tcat_hs_overlap(const tcat_state *a, const tcat_state *b, double *out) {
    return guarded([&] {
        need(a, "state a");
        need(b, "state b");
        need(out, "output");
        *out = thermalcat::hs_overlap(a->value, b->value);
    });
}

tcat_status tcat_parse_angle(const char *text, double *out) {
    return guarded([&] {
        need(text, "text");
        need(out, "output");
        *out = thermalcat::parse_angle(text);
    });
}

const char *const *tcat_report_commands(void) {
    static const std::vector<const char *> names = [] {
        std::vector<const char *> v;
        for (const std::string &s : thermalcat::report_commands()) {
            v.push_back(s.c_str());
        }
        v.push_back(nullptr);
        return v;
    }();
    return names.data();
}

tcat_status tcat_run_report(const char *command, const char *config_json, char **out) {
    return guarded([&] {
        need(command, "command");
        need(out, "output string");
        *out = nullptr;
        *out = copy_string(thermalcat::run_report(command, config_json ? config_json : "{}"));
    });
}

void tcat_string_free(char *text) { std::free(text); }

}  // extern "C"
