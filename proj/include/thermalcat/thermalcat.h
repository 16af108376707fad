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

/* C interface to libthermalcat. All functions return a tcat_status; on
 * failure tcat_last_error() describes the problem for the calling thread. */

#ifndef THERMALCAT_THERMALCAT_H
#define THERMALCAT_THERMALCAT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define TCAT_API __attribute__((visibility("default")))
#else
#define TCAT_API
#endif

typedef enum tcat_status {
    TCAT_OK = 0,
    TCAT_INVALID_ARGUMENT = 1,
    TCAT_DIMENSION_MISMATCH = 2,
    TCAT_NUMERICAL_FAILURE = 3,
    TCAT_HERMITICITY_VIOLATION = 4,
    TCAT_IMPOSSIBLE_OUTCOME = 5,
    TCAT_CUTOFF_INSUFFICIENT = 6,
    TCAT_IO = 7,
    TCAT_INTERNAL = 99
} tcat_status;

typedef enum tcat_bell {
    TCAT_PHI_PLUS = 0,
    TCAT_PHI_MINUS = 1,
    TCAT_PSI_PLUS = 2,
    TCAT_PSI_MINUS = 3
} tcat_bell;

typedef enum tcat_quadrature {
    TCAT_QUADRATURE_CANONICAL = 0,
    TCAT_QUADRATURE_REAL_PART = 1
} tcat_quadrature;

typedef struct tcat_state tcat_state;

TCAT_API const char *tcat_version(void);
TCAT_API const char *tcat_status_name(tcat_status status);
/* Message of the last failure on this thread; empty after a success. */
TCAT_API const char *tcat_last_error(void);

TCAT_API tcat_status tcat_displaced_thermal(double variance, double d_re, double d_im, tcat_state **out);
TCAT_API tcat_status tcat_thermal_superposition(double variance, double d_re, double d_im, double phi, int sign,
                                                tcat_state **out);
TCAT_API tcat_status tcat_thermal_qubit(double a_re, double a_im, double b_re, double b_im, double variance,
                                        double d_re, double d_im, tcat_state **out);
TCAT_API tcat_status tcat_two_mode_entangled(double variance, double d_re, double d_im, int sign, double phi,
                                             tcat_state **out);
TCAT_API tcat_status tcat_bs_entangled(double variance, double d_re, double d_im, int sign, double phi,
                                       tcat_state **out);
TCAT_API tcat_status tcat_thermal_bell(tcat_bell which, double variance, double d_re, double d_im,
                                       tcat_state **out);
TCAT_API tcat_status tcat_state_from_json(const char *json, tcat_state **out);
TCAT_API tcat_status tcat_state_to_json(const tcat_state *state, char **out);
TCAT_API void tcat_state_free(tcat_state *state);

TCAT_API tcat_status tcat_state_modes(const tcat_state *state, int *out);
/* point holds 2*modes doubles: re, im per mode. */
TCAT_API tcat_status tcat_wigner(const tcat_state *state, const double *point, size_t len, double *out);
TCAT_API tcat_status tcat_marginal(const tcat_state *state, int mode, double angle, tcat_quadrature convention,
                                   const double *x, size_t count, double *out);
TCAT_API tcat_status tcat_purity(const tcat_state *state, double *out);
TCAT_API tcat_status tcat_hs_overlap(const tcat_state *a, const tcat_state *b, double *out);

TCAT_API tcat_status tcat_parse_angle(const char *text, double *out);
/* Null-terminated list of report commands; owned by the library. */
TCAT_API const char *const *tcat_report_commands(void);
/* Runs a report; config is a JSON object of parameters. *out is freed with tcat_string_free. */
TCAT_API tcat_status tcat_run_report(const char *command, const char *config_json, char **out);
TCAT_API void tcat_string_free(char *text);

#ifdef __cplusplus
}
#endif

#endif /* THERMALCAT_THERMALCAT_H */
