/*
 * Copyright 2026 The ieat Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the image embedding association test library.
 *
 * All objects are opaque handles created by *_load / *_run functions and
 * released with the matching *_free. Every fallible call returns an
 * ieat_status; on failure a message describing the error is available from
 * ieat_last_error() on the calling thread until the next failing call.
 *
 * Strings returned through `char **` are owned by the caller and released
 * with ieat_string_free. `const char *` returns are owned by the handle they
 * came from and stay valid until that handle is freed.
 *
 * Handles are immutable once created and may be shared across threads.
 */

#ifndef IEAT_IEAT_H_
#define IEAT_IEAT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(IEAT_BUILDING_LIBRARY)
#    define IEAT_API __declspec(dllexport)
#  else
#    define IEAT_API __declspec(dllimport)
#  endif
#else
#  define IEAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ieat_status {
  IEAT_OK = 0,
  IEAT_ERR_INVALID_ARGUMENT = 1,
  IEAT_ERR_IO = 2,
  IEAT_ERR_PARSE = 3,
  IEAT_ERR_VALIDATION = 4,
  IEAT_ERR_DEGENERATE = 5,
  IEAT_ERR_NOT_FOUND = 6,
  IEAT_ERR_SIZE_MISMATCH = 7,
  IEAT_ERR_LIMIT_EXCEEDED = 8,
  IEAT_ERR_INTERNAL = 9
} ieat_status;

typedef enum ieat_embedding_format {
  IEAT_FORMAT_CSV = 0,
  IEAT_FORMAT_PACKED = 1
} ieat_embedding_format;

typedef enum ieat_tie_policy {
  IEAT_TIE_STRICT = 0,
  IEAT_TIE_INCLUSIVE = 1
} ieat_tie_policy;

typedef enum ieat_pooling {
  IEAT_POOL_PER_IMAGE = 0,
  IEAT_POOL_PER_EXEMPLAR_MEAN = 1
} ieat_pooling;

typedef enum ieat_p_method {
  IEAT_METHOD_EXACT = 0,
  IEAT_METHOD_MONTE_CARLO = 1
} ieat_p_method;

typedef enum ieat_magnitude {
  IEAT_MAGNITUDE_NONE = 0,
  IEAT_MAGNITUDE_SMALL = 1,
  IEAT_MAGNITUDE_MEDIUM = 2,
  IEAT_MAGNITUDE_LARGE = 3
} ieat_magnitude;

typedef enum ieat_render_format {
  IEAT_RENDER_TABLE = 0,
  IEAT_RENDER_CSV = 1,
  IEAT_RENDER_MARKDOWN = 2
} ieat_render_format;

typedef struct ieat_embeddings ieat_embeddings;
typedef struct ieat_manifest ieat_manifest;
typedef struct ieat_battery ieat_battery;
typedef struct ieat_results ieat_results;
typedef struct ieat_specificity ieat_specificity;
typedef struct ieat_valence_words ieat_valence_words;

typedef struct ieat_options {
  uint64_t exact_limit; /* max partitions enumerated exactly */
  uint64_t mc_samples;  /* Monte Carlo draws when exact is not allowed */
  uint64_t seed;
  ieat_tie_policy tie_policy; /* default for tests that do not set one */
  ieat_pooling pooling;       /* default for tests that do not set one */
  uint32_t threads;           /* 0 = hardware concurrency */
} ieat_options;

typedef struct ieat_test_result {
  const char *name;
  const char *x_category;
  const char *y_category;
  const char *a_category;
  const char *b_category;
  double statistic;
  double d;
  double p;
  ieat_p_method method;
  ieat_tie_policy tie_policy;
  uint64_t denominator; /* partitions (exact) or samples (Monte Carlo) */
  uint64_t greater_count;
  uint64_t tie_count;
  uint64_t less_count;
  double ci_halfwidth; /* Monte Carlo only */
  uint64_t seed;       /* Monte Carlo only */
  size_t n_t;
  size_t n_a;
  size_t n_b;
  ieat_magnitude magnitude;
  int direction; /* sign of d */
} ieat_test_result;

IEAT_API const char *ieat_version(void);
IEAT_API const char *ieat_status_string(ieat_status status);
IEAT_API const char *ieat_last_error(void);
IEAT_API void ieat_string_free(char *s);

IEAT_API void ieat_options_init(ieat_options *options);

/* Embedding tables. */
IEAT_API ieat_status ieat_embeddings_load(const char *path,
                                          ieat_embedding_format format,
                                          ieat_embeddings **out);
IEAT_API ieat_status ieat_embeddings_save(const ieat_embeddings *table,
                                          const char *path,
                                          ieat_embedding_format format);
IEAT_API size_t ieat_embeddings_count(const ieat_embeddings *table);
IEAT_API size_t ieat_embeddings_dimension(const ieat_embeddings *table);
IEAT_API void ieat_embeddings_free(ieat_embeddings *table);

/* Stimulus manifests. */
IEAT_API ieat_status ieat_manifest_load(const char *path, ieat_manifest **out);
IEAT_API size_t ieat_manifest_category_count(const ieat_manifest *manifest);
IEAT_API const char *ieat_manifest_category_name(const ieat_manifest *manifest,
                                                 size_t index);
/* Size of the resolved set for `name` under `pooling`. */
IEAT_API ieat_status ieat_manifest_category_size(
    const ieat_manifest *manifest, const ieat_embeddings *table,
    const char *name, ieat_pooling pooling, size_t *out);
IEAT_API void ieat_manifest_free(ieat_manifest *manifest);

/* Battery configs. */
IEAT_API ieat_status ieat_battery_load(const char *path, ieat_battery **out);
IEAT_API const char *ieat_battery_name(const ieat_battery *battery);
IEAT_API const char *ieat_battery_model(const ieat_battery *battery);
IEAT_API size_t ieat_battery_test_count(const ieat_battery *battery);
IEAT_API const char *ieat_battery_test_name(const ieat_battery *battery,
                                            size_t index);
IEAT_API void ieat_battery_free(ieat_battery *battery);

/*
 * Runs every test of the battery. Returns IEAT_OK when at least one test
 * succeeded; individual failures are reported per row.
 */
IEAT_API ieat_status ieat_battery_run(const ieat_battery *battery,
                                      const ieat_manifest *manifest,
                                      const ieat_embeddings *table,
                                      const ieat_options *options,
                                      ieat_results **out);
IEAT_API size_t ieat_results_count(const ieat_results *results);
IEAT_API size_t ieat_results_failed_count(const ieat_results *results);
/* NULL when row `index` succeeded. */
IEAT_API const char *ieat_results_error(const ieat_results *results,
                                        size_t index);
/* Returns the row's own error status for a failed row. */
IEAT_API ieat_status ieat_results_get(const ieat_results *results,
                                      size_t index, ieat_test_result *out);
/* Renders the successful rows in battery order. */
IEAT_API ieat_status ieat_results_render(const ieat_results *results,
                                         ieat_render_format format,
                                         char **out);
/* Intersectional hypothesis verdicts over the successful rows. */
IEAT_API ieat_status ieat_results_render_hypotheses(const ieat_results *results,
                                                    ieat_render_format format,
                                                    char **out);
IEAT_API void ieat_results_free(ieat_results *results);

/*
 * One test over row-major arrays: x and y hold n_t vectors each, a holds n_a
 * and b holds n_b, all of dimension dim. Name fields of `out` are NULL.
 */
IEAT_API ieat_status ieat_evaluate(const double *x, const double *y,
                                   size_t n_t, const double *a, size_t n_a,
                                   const double *b, size_t n_b, size_t dim,
                                   const ieat_options *options,
                                   ieat_test_result *out);

/*
 * False-positive calibration over random re-partitions of one battery
 * test's pooled sets. test_name NULL selects the first test.
 */
IEAT_API ieat_status ieat_specificity_run(
    const ieat_battery *battery, const char *test_name,
    const ieat_manifest *manifest, const ieat_embeddings *table,
    uint64_t trials, const double *alphas, size_t alpha_count, uint64_t seed,
    const ieat_options *options, ieat_specificity **out);
IEAT_API size_t ieat_specificity_threshold_count(const ieat_specificity *s);
IEAT_API ieat_status ieat_specificity_threshold(const ieat_specificity *s,
                                                size_t index, double *alpha,
                                                uint64_t *false_positives,
                                                double *rate);
IEAT_API ieat_status ieat_specificity_render(const ieat_specificity *s,
                                             ieat_render_format format,
                                             char **out);
IEAT_API void ieat_specificity_free(ieat_specificity *s);

/* Valence word selection from a `word,valence,imagery` norms table. */
IEAT_API ieat_status ieat_select_valence(const char *norms_path, size_t k,
                                         double imagery_min,
                                         ieat_valence_words **out);
IEAT_API size_t ieat_valence_words_count(const ieat_valence_words *w);
IEAT_API const char *ieat_valence_positive(const ieat_valence_words *w,
                                           size_t index);
IEAT_API const char *ieat_valence_negative(const ieat_valence_words *w,
                                           size_t index);
IEAT_API ieat_status ieat_valence_words_render(const ieat_valence_words *w,
                                               ieat_render_format format,
                                               char **out);
IEAT_API void ieat_valence_words_free(ieat_valence_words *w);

#ifdef __cplusplus
}
#endif

#endif /* IEAT_IEAT_H_ */
