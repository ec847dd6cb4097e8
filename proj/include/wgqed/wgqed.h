/*
 * Copyright 2026 The wgqed Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libwgqed: excitation transfer between two qubits through a
 * shared waveguide mode.
 *
 * Every fallible call returns a wgqed_status. On failure a description of the
 * last error on the calling thread is available from wgqed_last_error().
 * Handles (wgqed_config, wgqed_result) are opaque and owned by the caller;
 * release them with the matching *_free function. Frequencies and rates are
 * ordinary frequencies in GHz, times are in ns.
 */

#ifndef WGQED_H
#define WGQED_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(WGQED_BUILDING)
#    define WGQED_API __declspec(dllexport)
#  else
#    define WGQED_API __declspec(dllimport)
#  endif
#else
#  define WGQED_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wgqed_status {
    WGQED_OK = 0,
    WGQED_ERR_INVALID_ARGUMENT = 1, /* null pointer or misuse of a handle */
    WGQED_ERR_PARSE = 2,            /* malformed configuration text */
    WGQED_ERR_VALIDATION = 3,       /* parameter or option out of range */
    WGQED_ERR_NO_PEAK = 4,          /* P_B never turned over in the window */
    WGQED_ERR_INTEGRATION = 5,      /* step-size underflow or unphysical state */
    WGQED_ERR_ZERO_DENOMINATOR = 6, /* quality factor of a lossless system */
    WGQED_ERR_IO = 7,
    WGQED_ERR_BUFFER_TOO_SMALL = 8,
    WGQED_ERR_INTERNAL = 9
} wgqed_status;

typedef struct wgqed_params {
    double omega_q;
    double omega_w;
    double g_qw;
    double gamma;
    double kappa;
    int n_fock;
} wgqed_params;

typedef struct wgqed_integrator_options {
    double rel_tol;
    double abs_tol;
    double max_step;     /* ns, may be +inf */
    double initial_step; /* ns, 0 = automatic */
} wgqed_integrator_options;

typedef struct wgqed_transfer_metrics {
    double fidelity;
    double latency_ns;
    size_t peak_index;
    double window_end_ns;
} wgqed_transfer_metrics;

typedef enum wgqed_mode {
    WGQED_MODE_TRACE = 0,
    WGQED_MODE_METRICS = 1,
    WGQED_MODE_SWEEP = 2,
    WGQED_MODE_PRESET = 3
} wgqed_mode;

typedef enum wgqed_result_kind {
    WGQED_RESULT_TRACE = 0,
    WGQED_RESULT_METRICS = 1,
    WGQED_RESULT_SWEEP = 2
} wgqed_result_kind;

typedef struct wgqed_config wgqed_config;
typedef struct wgqed_result wgqed_result;

WGQED_API const char* wgqed_version(void);
WGQED_API const char* wgqed_status_string(wgqed_status status);
/* Message of the last failed call on this thread; "" if none. */
WGQED_API const char* wgqed_last_error(void);

/* ---- direct physics entry points -------------------------------------- */

WGQED_API void wgqed_params_default(wgqed_params* params);
WGQED_API void wgqed_integrator_default(wgqed_integrator_options* options);

/* options may be NULL for the defaults. */
WGQED_API wgqed_status wgqed_simulate_transfer(const wgqed_params* params,
                                               const wgqed_integrator_options* options,
                                               wgqed_transfer_metrics* out);
WGQED_API wgqed_status wgqed_quality_factor(const wgqed_params* params, double* out);
WGQED_API wgqed_status wgqed_effective_coupling(double g_qw, double delta, double gamma,
                                                double* out);

/* ---- presets ------------------------------------------------------------ */

WGQED_API size_t wgqed_preset_count(void);
/* NULL when index is out of range. */
WGQED_API const char* wgqed_preset_name(size_t index);
WGQED_API const char* wgqed_preset_caption(size_t index);

/* ---- run configurations -------------------------------------------------- */

WGQED_API wgqed_status wgqed_config_new(wgqed_mode mode, wgqed_config** out);
WGQED_API wgqed_status wgqed_config_from_preset(const char* name, wgqed_config** out);
WGQED_API wgqed_status wgqed_config_parse(const char* text, wgqed_config** out);
/* key is "section.key", value uses the configuration file syntax ("1 MHz"). */
WGQED_API wgqed_status wgqed_config_set(wgqed_config* config, const char* key, const char* value);
WGQED_API wgqed_status wgqed_config_validate(const wgqed_config* config);
WGQED_API wgqed_mode wgqed_config_mode(const wgqed_config* config);
/* Writes the configuration text including the terminating NUL. *required
 * receives the needed capacity; buffer may be NULL when capacity is 0. */
WGQED_API wgqed_status wgqed_config_render(const wgqed_config* config, char* buffer,
                                           size_t capacity, size_t* required);
WGQED_API void wgqed_config_free(wgqed_config* config);

/* ---- running ------------------------------------------------------------ */

/* jobs = 0 uses every hardware thread; results do not depend on jobs. */
WGQED_API wgqed_status wgqed_run(const wgqed_config* config, unsigned jobs, wgqed_result** out);
WGQED_API wgqed_result_kind wgqed_result_get_kind(const wgqed_result* result);
/* Trace samples or sweep cells; 1 for metrics. */
WGQED_API size_t wgqed_result_rows(const wgqed_result* result);
WGQED_API wgqed_status wgqed_result_metrics(const wgqed_result* result,
                                            wgqed_transfer_metrics* out);
WGQED_API wgqed_status wgqed_result_write_csv(const wgqed_result* result, const char* path);
WGQED_API wgqed_status wgqed_result_write_svg(const wgqed_result* result, const char* path);
/* Creates `directory` (NULL: the configured output directory) and writes
 * <label>.csv / <label>.svg per the configured formats plus <label>.cfg with
 * the rendered configuration. */
WGQED_API wgqed_status wgqed_result_write_outputs(const wgqed_result* result,
                                                  const char* directory);
WGQED_API void wgqed_result_free(wgqed_result* result);

#ifdef __cplusplus
}
#endif

#endif /* WGQED_H */
