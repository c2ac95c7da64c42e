// Copyright 2026 The nball Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NBALL_NBALL_H_
#define NBALL_NBALL_H_

/* C interface to the nball library: pair-distance laws in n-balls, the
 * RIPS generator test, and pairwise self-energies.
 *
 * Every function returns an nball_status. On failure the message is kept
 * per thread and read with nball_last_error(). Strings returned through
 * `char** out` are heap allocated; release them with nball_free(). */

#include <stddef.h>
#include <stdint.h>

#if defined(NBALL_BUILDING)
#define NBALL_API __attribute__((visibility("default")))
#else
#define NBALL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nball_status {
  NBALL_OK = 0,
  NBALL_ERR_DOMAIN = 1,           /* argument outside an operation's domain */
  NBALL_ERR_CONFIG = 2,           /* bad configuration or spec string */
  NBALL_ERR_NONCONVERGENCE = 3,   /* quadrature / series missed tolerance */
  NBALL_ERR_DIVERGENT = 4,        /* pair integral diverges without a cutoff */
  NBALL_ERR_STREAM_DEFECT = 5,    /* rejection cap hit, degenerate stream */
  NBALL_ERR_STREAM_EXHAUSTED = 6, /* external stream ran out of words */
  NBALL_ERR_DEGENERATE = 7,       /* density has no mass */
  NBALL_ERR_NULL = 8,             /* required pointer argument was NULL */
  NBALL_ERR_INTERNAL = 9
} nball_status;

NBALL_API const char* nball_version(void);
NBALL_API const char* nball_status_name(nball_status status);
/* Message of the last failed call on this thread ("" if none). */
NBALL_API const char* nball_last_error(void);
NBALL_API void nball_free(char* p);

/* ---- engines ------------------------------------------------------------ */

typedef struct nball_engine nball_engine;

/* algorithm: "ran0", "r31", "nws". seed: RAN0/R31 seed, NWS counter offset.
 * alpha: NWS constant, <= 0 selects sqrt(2) - 1. */
NBALL_API nball_status nball_engine_create(const char* algorithm, uint64_t seed, double alpha,
                                           nball_engine** out);
/* Raw little-endian 64-bit words from a file, "-" for stdin. */
NBALL_API nball_status nball_engine_create_external(const char* path, nball_engine** out);
NBALL_API nball_status nball_engine_create_external_words(const uint64_t* words, size_t count,
                                                          nball_engine** out);
NBALL_API void nball_engine_destroy(nball_engine* engine);
NBALL_API nball_status nball_engine_next_uniform(nball_engine* engine, double* out);
NBALL_API nball_status nball_engine_describe(const nball_engine* engine, char** out);

/* ---- distance distributions --------------------------------------------- */

typedef struct nball_distribution nball_distribution;

/* density: "uniform", "gaussian", "two-shell:R1:R2", "shells:B=D,...",
 * "radial:EXPR". A uniform density with hard_core > 0 gives the hard-core
 * law on [r_c, 2R]. Gaussian ignores radius (unbounded space). Closed forms
 * are used where they exist, the radial lens quadrature otherwise. */
NBALL_API nball_status nball_distribution_create(const char* density, int dim, double radius,
                                                 double sigma, double hard_core,
                                                 nball_distribution** out);
NBALL_API void nball_distribution_destroy(nball_distribution* dist);
NBALL_API nball_status nball_distribution_pdf(const nball_distribution* dist, double s,
                                              double* out);
NBALL_API nball_status nball_distribution_cdf(const nball_distribution* dist, double x,
                                              double* out);
NBALL_API nball_status nball_distribution_moment(const nball_distribution* dist, int m,
                                                 double* out);
/* JSON {"value", "formula", "warning", ...} for the m-th moment. */
NBALL_API nball_status nball_distribution_moment_json(const nball_distribution* dist, int m,
                                                      char** out);
/* Support [lo, hi] (hi may be +inf) and the finite integration limit. */
NBALL_API nball_status nball_distribution_support(const nball_distribution* dist, double* lo,
                                                  double* hi, double* integration_hi);
/* 1 for closed form, 0 for numeric. */
NBALL_API nball_status nball_distribution_is_closed_form(const nball_distribution* dist,
                                                         int* out);
NBALL_API nball_status nball_distribution_describe(const nball_distribution* dist, char** out);

/* int_{cut} P(s) coeff s^m ds. */
NBALL_API nball_status nball_pairwise_expectation_power(const nball_distribution* dist,
                                                        double coeff, int m, double lower_cut,
                                                        double* out);

/* ---- Monte Carlo master formula ------------------------------------------ */

/* Estimates P_n(s) on `grid` (0 .. 2R) for any density spec accepted by
 * nball_distribution_create plus "general:x4y4" and "general:EXPR".
 * `values` and `stderrs` receive grid_size entries each. The engine is not
 * advanced (per-point substreams); external engines are consumed. */
NBALL_API nball_status nball_general_pdf_mc(const char* density, int dim, double radius,
                                            const double* grid, size_t grid_size,
                                            uint64_t samples, nball_engine* engine, int jobs,
                                            double* values, double* stderrs);

/* ---- RIPS ---------------------------------------------------------------- */

typedef struct nball_rips_options {
  int dim;
  const char* density;   /* "uniform" or "gaussian" */
  double radius;
  double sigma;
  uint64_t triples;
  const char* mapping;   /* "rejection", "polar", or NULL for the default */
  double z_threshold;    /* <= 0 selects 4 */
  int shards;
  int jobs;
} nball_rips_options;

NBALL_API void nball_rips_options_init(nball_rips_options* opt);

/* One run. format: "json" or "csv" (header + row). *pass is 1 on pass.
 * Stream errors are reported inside the result with verdict fail. The
 * engine handle is not advanced. */
NBALL_API nball_status nball_rips_run(const nball_engine* engine, const nball_rips_options* opt,
                                      const char* format, char** out, int* pass);

/* Comparison table: one row per engine over `dims`. format: "text", "json",
 * "csv". *all_pass is 1 when every cell passes. */
NBALL_API nball_status nball_rips_table(const nball_engine* const* engines, size_t engine_count,
                                        const int* dims, size_t dim_count, uint64_t triples,
                                        const char* mapping, int jobs, double radius,
                                        const char* format, char** out, int* all_pass);

NBALL_API double nball_rips_exact_uniform(int dim, double radius);
NBALL_API double nball_rips_exact_gaussian(int dim, double sigma);

/* ---- self-energies (JSON with input echo) -------------------------------- */

/* Z(Z-1)/2 e^2 <1/s> for the pair law of `dist` (uniform: closed form). */
NBALL_API nball_status nball_selfenergy_coulomb(int charges, double charge,
                                                const nball_distribution* dist, char** out);

typedef struct nball_neutrino_options {
  int neutrons;
  double fermi_constant;
  double a_e, a_p, a_n;
  double hard_core;
  const char* density;   /* "uniform", "gaussian", or another 3-d spec */
  double radius;
  double sigma;
  int renormalized;      /* uniform only: use the law renormalized on [r_c, 2R] */
} nball_neutrino_options;

NBALL_API void nball_neutrino_options_init(nball_neutrino_options* opt);
NBALL_API nball_status nball_selfenergy_neutrino(const nball_neutrino_options* opt, char** out);

/* ---- histograms ---------------------------------------------------------- */

/* Pair-distance histogram as CSV (bin_lo,bin_hi,count). Advances the engine.
 * truncate applies to gaussian; mapping may be NULL. *overflow receives the
 * count beyond the last edge when non-NULL. */
NBALL_API nball_status nball_pair_histogram_csv(const char* density, int dim, double radius,
                                                double sigma, int truncate, const char* mapping,
                                                nball_engine* engine, uint64_t pairs, int bins,
                                                char** out, uint64_t* overflow);

#ifdef __cplusplus
}
#endif

#endif  // NBALL_NBALL_H_
