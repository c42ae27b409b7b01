/*
 * This file is part of rindler-corr.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

/*
 * Stable C interface to the rindler-corr core. All entry points return an
 * rc_status; on any failure rc_last_error() carries a human-readable
 * message for the calling thread. Handles are opaque and single-owner;
 * strings returned through char** are NUL-terminated, allocated by the
 * library, and released with rc_string_free().
 */

#ifndef RINDLER_CORR_H
#define RINDLER_CORR_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rc_status {
  RC_OK = 0,
  RC_ERR_INVALID_ARGUMENT = 1,
  RC_ERR_TRUNCATION_OVERFLOW = 2,
  RC_ERR_NUMERICAL = 3,
  RC_ERR_IO = 4,
  RC_ERR_VERIFY_FAILED = 5,
  RC_ERR_UNKNOWN = 6
} rc_status;

typedef struct rc_config rc_config;
typedef struct rc_result rc_result;

/* One grid point of the sweep; field names match the CSV columns. */
typedef struct rc_record {
  double alpha;
  double s_a, s_r, s_antir;
  double i_ar, i_aantir, i_rantir;
  double j_ar, j_aantir;
  double d_ar, d_aantir;
  double ef_rantir, ef_rantir_alt;
  double theta_ar, phi_ar, theta_aantir, phi_aantir;
  int n_used;
} rc_record;

/* Library version string, e.g. "0.1.0". Static storage; do not free. */
const char* rc_version(void);

/* Symbolic name of a status code. Static storage; do not free. */
const char* rc_status_name(rc_status status);

/* Message of the most recent failure on this thread ("" if none). The
 * pointer stays valid until the next library call on the same thread. */
const char* rc_last_error(void);

/* Release a string returned through a char** out-parameter. */
void rc_string_free(char* s);

/*
 * Configuration. Keys mirror the CLI flags and the key=value config-file
 * entries: alpha-min, alpha-max, steps, omega, accel-min, accel-max,
 * nmax, tail-eps, out, plots, plot-dir, workers. Setting any of omega /
 * accel-min / accel-max switches the sweep axis from squeezing to
 * acceleration (all three must then be provided).
 */
rc_config* rc_config_new(void);
void rc_config_free(rc_config* config);
rc_status rc_config_set(rc_config* config, const char* key, const char* value);
/* Current value of a key, serialized to text. */
rc_status rc_config_get(const rc_config* config, const char* key, char** out);
rc_status rc_config_load_file(rc_config* config, const char* path);

/* Run the full sweep described by the config. */
rc_status rc_sweep_run(const rc_config* config, rc_result** out);
void rc_result_free(rc_result* result);

size_t rc_result_size(const rc_result* result);
double rc_result_wall_seconds(const rc_result* result);
rc_status rc_result_record(const rc_result* result, size_t index, rc_record* out);

/* CSV serialization of the whole result (versioned schema). */
rc_status rc_result_csv(const rc_result* result, char** out);
rc_status rc_result_write_csv(const rc_result* result, const char* path);
/* Write the six SVG charts into the given directory (created if needed). */
rc_status rc_result_write_plots(const rc_result* result, const char* dir);

/* Single grid point, using the config's truncation and optimizer settings. */
rc_status rc_point(const rc_config* config, double alpha, rc_record* out);
/* The same record as a JSON object; keys match the CSV columns. */
rc_status rc_point_json(const rc_config* config, double alpha, char** out);

/* Cutoff-doubling study at one squeezing value, as a printable table. */
rc_status rc_convergence_text(const rc_config* config, double alpha, char** out);

/* Self-check suite. RC_OK when every check passes, RC_ERR_VERIFY_FAILED
 * otherwise; the report text is returned in both cases. */
rc_status rc_verify(char** report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RINDLER_CORR_H */
