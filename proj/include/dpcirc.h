// Copyright 2026 The dpcirc Authors
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

/* C interface to the dpcirc simulator.
 *
 * Every function that can fail returns a dpcirc_status. On failure the
 * message is available from dpcirc_last_error() on the same thread until the
 * next call into the library. Objects returned through out-pointers are owned
 * by the caller and released with the matching *_free function.
 */
#ifndef DPCIRC_H
#define DPCIRC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DPCIRC_API __declspec(dllexport)
#else
#define DPCIRC_API __attribute__((visibility("default")))
#endif

typedef enum dpcirc_status {
    DPCIRC_OK = 0,
    DPCIRC_USAGE_ERROR = 1,
    DPCIRC_VERIFICATION_FAILED = 2,
    DPCIRC_RUNTIME_ERROR = 3,
} dpcirc_status;

DPCIRC_API const char *dpcirc_version(void);
/* Message of the most recent failure on this thread, "" if none. */
DPCIRC_API const char *dpcirc_last_error(void);

/* ---- tables: every experiment result is a CSV-shaped table ---- */

typedef struct dpcirc_table dpcirc_table;

DPCIRC_API size_t dpcirc_table_rows(const dpcirc_table *table);
DPCIRC_API size_t dpcirc_table_columns(const dpcirc_table *table);
/* NULL when out of range. */
DPCIRC_API const char *dpcirc_table_column_name(const dpcirc_table *table, size_t col);
/* Formatted cell text exactly as written to CSV; NULL when out of range. */
DPCIRC_API const char *dpcirc_table_cell(const dpcirc_table *table, size_t row, size_t col);
/* Cell as a number; NaN for censored cells or out-of-range indices. */
DPCIRC_API double dpcirc_table_value(const dpcirc_table *table, size_t row, size_t col);
/* On failure no partial file is left behind. */
DPCIRC_API dpcirc_status dpcirc_table_write_csv(const dpcirc_table *table, const char *path);
DPCIRC_API dpcirc_status dpcirc_table_read_csv(const char *path, dpcirc_table **out);
DPCIRC_API void dpcirc_table_free(dpcirc_table *table);

/* ---- experiments ---- */

typedef struct dpcirc_circuit_config {
    size_t n;      /* even, >= 2 */
    double p;      /* erasure probability per site per layer */
    double q;      /* Hadamard probability per site per layer */
    double h;      /* junk-noise probability per site per layer */
    size_t depth;  /* layers */
    /* "maximally_mixed", "referenced_classical" or "referenced_bell"; NULL means maximally_mixed. */
    const char *initial_state;
} dpcirc_circuit_config;

/* threads <= 0 uses all hardware threads; results never depend on it. */

/* Columns t,s_mean,s_stderr,n,p,q,h,realizations,seed. */
DPCIRC_API dpcirc_status dpcirc_run_decay(const dpcirc_circuit_config *config, uint64_t seed, size_t realizations,
                                          int threads, dpcirc_table **out);

typedef struct dpcirc_sweep_config {
    const size_t *ns;
    size_t n_count;
    const double *ps;
    size_t p_count;
    double q;
    double h;
    /* depth(N) = max(depth_min, round(depth_coeff * N^depth_exponent)) */
    double depth_coeff;
    double depth_exponent;
    size_t depth_min;
    size_t realizations;
    size_t bootstrap;
    /* t0(N) = round(max(t0_min, t0_coeff * N^t0_exponent)); tau is the time after t0
       until the mean entropy falls to fraction * S(t0). */
    double t0_min;
    double t0_coeff;
    double t0_exponent;
    double fraction;
} dpcirc_sweep_config;

/* Fills defaults for everything except the N and p lists. */
DPCIRC_API void dpcirc_sweep_config_default(dpcirc_sweep_config *config);
/* Columns n,p,tau_mean,tau_stderr,censored_fraction,realizations,seed.
   double_t0 (may be NULL) receives the same layout with tau read at twice
   the transient cutoff, for a t0 sensitivity check. */
DPCIRC_API dpcirc_status dpcirc_run_sweep(const dpcirc_sweep_config *config, uint64_t seed, int threads,
                                          dpcirc_table **out, dpcirc_table **double_t0);

typedef struct dpcirc_crossing {
    double p_c;
    double z;
    double spread;
    double cov_pp;
    double cov_pz;
    double cov_zz;
    size_t bootstrap_used;
} dpcirc_crossing;

/* Finite-size crossing of tau(p)/N^z from a sweep table. */
DPCIRC_API dpcirc_status dpcirc_fit_crossing(const dpcirc_table *sweep, size_t bootstrap, uint64_t seed,
                                             dpcirc_crossing *out);

/* Lattice model. start is "random_half" (NULL) or "full".
   Columns t,density_mean,survival_prob,qbar_estimate,qbar_stderr. */
DPCIRC_API dpcirc_status dpcirc_run_dp(size_t n, double p, size_t depth, size_t trajectories, const char *start,
                                       uint64_t seed, int threads, dpcirc_table **out);

/* Antipodal mutual information at t = round(N^z), one row per p.
   Columns n,p,q,t_eval,mi_mean,mi_stderr. */
DPCIRC_API dpcirc_status dpcirc_run_mi(size_t n, const double *ps, size_t p_count, double q, double h,
                                       size_t realizations, double z, uint64_t seed, int threads, dpcirc_table **out);

/* Sweeps variable 'q' or 'h' over values at fixed config (the other must be 0).
   curves gets decay rows for every value; saturation gets value,saturation,saturation_stderr. */
DPCIRC_API dpcirc_status dpcirc_run_perturb(const dpcirc_circuit_config *config, char variable, const double *values,
                                            size_t value_count, uint64_t seed, size_t realizations, int threads,
                                            dpcirc_table **curves, dpcirc_table **saturation);

typedef struct dpcirc_phase_config {
    size_t n;
    const double *ps;
    size_t p_count;
    const double *qs;
    size_t q_count;
    size_t depth; /* 0 means round(4 N^1.6) */
    size_t realizations;
    double threshold; /* bits */
    const char *initial_state; /* NULL means referenced_classical */
} dpcirc_phase_config;

/* Input:output MI decay timescale on the p x q grid (p-major).
   Columns n,p,q,timescale_mean,timescale_stderr,capped_fraction. */
DPCIRC_API dpcirc_status dpcirc_run_phase_diagram(const dpcirc_phase_config *config, uint64_t seed, int threads,
                                                  dpcirc_table **out);

/* ---- data collapse ---- */

#define DPCIRC_MAX_EXPONENTS 8

typedef struct dpcirc_collapse_result {
    size_t exponent_count;
    double exponents[DPCIRC_MAX_EXPONENTS];
    char names[DPCIRC_MAX_EXPONENTS][16];
    double objective;
    int converged;
    int degenerate;
} dpcirc_collapse_result;

/* ansatz:
     "tau"       sweep table; exponents z, nu, p_c; x = (p - p_c) N^(1/nu), y = tau N^-z
     "crossover" decay table; exponents gamma/eta, z/eta; x = t c^(z/eta), y = S c^-(gamma/eta)
     "generic"   decay table; exponents ax, bx, ay, by; x = t N^ax c^bx, y = S N^ay c^by
   where c is the control parameter of each curve: q if the table varies q, else h
   (else p for "generic"). Curves with c = 0 are dropped for "crossover".
   bound_count = 0 selects default bounds. rescaled (optional) receives
   curve,n,control,x,y,y_err at the fitted exponents. */
DPCIRC_API dpcirc_status dpcirc_fit_collapse(const dpcirc_table *data, const char *ansatz, const double *lower,
                                             const double *upper, size_t bound_count, size_t restarts, uint64_t seed,
                                             dpcirc_collapse_result *out, dpcirc_table **rescaled);

/* ---- verification ---- */

typedef struct dpcirc_report dpcirc_report;

typedef struct dpcirc_verify_options {
    uint64_t seed;
    size_t oracle_schedules;
    size_t s2_realizations;
    size_t absorbing_trajectories;
    size_t qbar_samples;
} dpcirc_verify_options;

DPCIRC_API void dpcirc_verify_options_default(dpcirc_verify_options *options);
/* Returns DPCIRC_VERIFICATION_FAILED (with *out still filled) if any check fails. */
DPCIRC_API dpcirc_status dpcirc_verify(const dpcirc_verify_options *options, int threads, dpcirc_report **out);
DPCIRC_API size_t dpcirc_report_count(const dpcirc_report *report);
DPCIRC_API const char *dpcirc_report_name(const dpcirc_report *report, size_t i);
DPCIRC_API int dpcirc_report_passed(const dpcirc_report *report, size_t i);
DPCIRC_API const char *dpcirc_report_detail(const dpcirc_report *report, size_t i);
DPCIRC_API double dpcirc_report_seconds(const dpcirc_report *report, size_t i);
DPCIRC_API void dpcirc_report_free(dpcirc_report *report);

#ifdef __cplusplus
}
#endif

#endif
