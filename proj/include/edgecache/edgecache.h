/* SPDX-License-Identifier: Apache-2.0 */
#ifndef EDGECACHE_EDGECACHE_H_
#define EDGECACHE_EDGECACHE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(EDGECACHE_BUILDING_LIBRARY)
#define EC_API __attribute__((visibility("default")))
#else
#define EC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every function returning ec_status leaves a thread-local
   diagnostic retrievable with ec_last_error() when it fails. */
typedef enum ec_status {
  EC_OK = 0,
  EC_ERR_INVALID_ARGUMENT = 1,
  EC_ERR_PRECISION_LOSS = 2,
  EC_ERR_NOT_CONVERGED = 3,
  EC_ERR_CONFIG = 4,
  EC_ERR_IO = 5,
  EC_ERR_VALIDATION = 6, /* validate run finished with a z-score breach */
  EC_ERR_BUFFER_TOO_SMALL = 7,
  EC_ERR_INTERNAL = 8
} ec_status;

EC_API const char* ec_status_string(ec_status status);
/* Message of the last failure on the calling thread; "" when none. */
EC_API const char* ec_last_error(void);
EC_API const char* ec_version(void);

/* ---- Network configuration (plain value) ---- */

typedef struct ec_system_config {
  unsigned k_ens;      /* K edge nodes */
  size_t n_files;      /* N */
  unsigned cache_size; /* M, files per edge node */
  double rho;          /* Zipf skewness */
  double rate;         /* target rate R, bits/s/Hz */
} ec_system_config;

/* K=5, N=10, M=1, rho=0.8, R=1. */
EC_API ec_system_config ec_system_config_default(void);

/* ---- Popularity ---- */

/* Writes the n_files Zipf probabilities to out[0..n_files). */
EC_API ec_status ec_zipf_popularity(size_t n_files, double rho, double* out, size_t out_len);
EC_API ec_status ec_miss_mass(size_t n_files, double rho, size_t n0, double* out);

/* ---- Per-file outage analysis (linear power) ---- */

EC_API ec_status ec_partition_coefficients(unsigned k_ens, unsigned t_d, double* out, size_t out_len);
EC_API ec_status ec_hypoexp_cdf(const double* coeffs, size_t n, double threshold, double* out);
EC_API ec_status ec_gamma_sum_cdf(unsigned k_ens, double threshold, double* out);
EC_API ec_status ec_outage_closed_form(unsigned k_ens, unsigned t_d, double power, double rate,
                                       double* out);
EC_API ec_status ec_series_coefficient(unsigned k_ens, unsigned t_d, unsigned m, double* out);
/* truncation 0 selects the default cap; error_bound may be NULL. */
EC_API ec_status ec_outage_series(unsigned k_ens, unsigned t_d, double power, double rate,
                                  unsigned truncation, double* out, double* error_bound);
EC_API ec_status ec_diversity_fit(const double* snr_db, const double* outage, size_t n,
                                  double* out);
EC_API double ec_db_to_linear(double snr_db);

/* ---- System level ---- */

EC_API ec_status ec_system_outage(const ec_system_config* config, const unsigned* t, size_t n0,
                                  double power, double* out);

/* ---- Monte Carlo ---- */

typedef struct ec_mc_estimate {
  double mean;
  double std_error;
  uint64_t trials;
  uint64_t events;
  uint64_t seed;
} ec_mc_estimate;

EC_API ec_status ec_mc_outage(unsigned k_ens, unsigned t_d, double power, double rate,
                              uint64_t trials, uint64_t seed, ec_mc_estimate* out);
EC_API ec_status ec_mc_outage_subsets(unsigned k_ens, unsigned t_d, double power, double rate,
                                      uint64_t trials, uint64_t seed, ec_mc_estimate* out);
EC_API ec_status ec_mc_system_outage(const ec_system_config* config, const unsigned* t, size_t n0,
                                     double power, uint64_t trials, uint64_t seed,
                                     ec_mc_estimate* out);

/* ---- Placement optimization (opaque result handle) ---- */

typedef struct ec_optimization ec_optimization;

EC_API ec_status ec_optimize_placement(const ec_system_config* config, double power,
                                       int full_enumeration, ec_optimization** out);
EC_API void ec_optimization_destroy(ec_optimization* result);
EC_API size_t ec_optimization_n0(const ec_optimization* result);
/* Copies t_1..t_n0 into out; EC_ERR_BUFFER_TOO_SMALL when out_len < n0. */
EC_API ec_status ec_optimization_t(const ec_optimization* result, unsigned* out, size_t out_len);
EC_API double ec_optimization_objective(const ec_optimization* result);
EC_API size_t ec_optimization_explored(const ec_optimization* result);

/* ---- Experiments (opaque handle) ---- */

typedef struct ec_experiment ec_experiment;

EC_API ec_status ec_experiment_create(ec_experiment** out);
EC_API void ec_experiment_destroy(ec_experiment* exp);

/* Mode: outage, sweep, optimize, simulate, validate, table1, fig2. */
EC_API ec_status ec_experiment_set_mode(ec_experiment* exp, const char* mode);
EC_API ec_status ec_experiment_load_config(ec_experiment* exp, const char* path);
EC_API ec_status ec_experiment_set_system(ec_experiment* exp, const ec_system_config* config);
EC_API ec_status ec_experiment_get_system(const ec_experiment* exp, ec_system_config* out);
/* Comma list "0,3,6" or range "0:3:30". */
EC_API ec_status ec_experiment_set_snr_db(ec_experiment* exp, const char* list);
EC_API ec_status ec_experiment_set_t_d(ec_experiment* exp, unsigned t_d);
EC_API ec_status ec_experiment_set_policy(ec_experiment* exp, const unsigned* t, size_t n0);
EC_API ec_status ec_experiment_set_trials(ec_experiment* exp, uint64_t trials);
EC_API ec_status ec_experiment_set_seed(ec_experiment* exp, uint64_t seed);
EC_API ec_status ec_experiment_set_output(ec_experiment* exp, const char* path);
/* "csv" or "json". */
EC_API ec_status ec_experiment_set_format(ec_experiment* exp, const char* format);
EC_API ec_status ec_experiment_set_full_enumeration(ec_experiment* exp, int enabled);

/* Writes the output file (stdout when no path is set). Returns
   EC_ERR_VALIDATION when a validate run breaches the z-score limit; the
   output is still written in that case. */
EC_API ec_status ec_experiment_run(ec_experiment* exp);

/* Renders into a library-owned buffer valid until the next call on `exp`. */
EC_API ec_status ec_experiment_render(ec_experiment* exp, const char** text, size_t* len);

#ifdef __cplusplus
}
#endif

#endif /* EDGECACHE_EDGECACHE_H_ */
