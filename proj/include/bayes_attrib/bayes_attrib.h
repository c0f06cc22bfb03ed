/*
 * Copyright 2026 The bayes-attrib Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the bayes-attrib engine: weighted naive Bayes training and
 * closed-form Shapley / Weight-of-Evidence attributions.
 *
 * Conventions:
 *  - Objects are opaque handles created by *_load / *_fit and released with
 *    the matching *_free. Handles are immutable after creation and may be
 *    shared read-only across threads.
 *  - Every fallible call returns a ba_status. On failure the message is
 *    available from ba_last_error() on the calling thread until the next
 *    call that fails.
 *  - Strings returned through char** out-parameters are owned by the caller
 *    and released with ba_string_free.
 */
#ifndef BAYES_ATTRIB_H_
#define BAYES_ATTRIB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BA_API __declspec(dllexport)
#else
#define BA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ba_status {
  BA_OK = 0,
  BA_E_INVALID_ARGUMENT = 1, /* bad option, unknown label, refused request */
  BA_E_VERIFICATION = 2,     /* an oracle check exceeded its tolerance */
  BA_E_IO = 3,               /* file missing or not writable */
  BA_E_FORMAT = 4,           /* malformed CSV or model file, version mismatch */
  BA_E_DOMAIN = 5,           /* numerically undefined (zero counts with smoothing 0, ...) */
  BA_E_INTERNAL = 6
} ba_status;

typedef enum ba_method {
  BA_METHOD_SHAPLEY = 0,
  BA_METHOD_WOE = 1,
  BA_METHOD_MULTICLASS = 2,
  BA_METHOD_BRUTEFORCE = 3,
  BA_METHOD_SAMPLING = 4
} ba_method;

typedef enum ba_value_fn { BA_VALUE_LOG_ODDS = 0, BA_VALUE_POSTERIOR = 1 } ba_value_fn;

typedef enum ba_marginal_mode { BA_MARGINAL_EMPIRICAL = 0, BA_MARGINAL_MIXTURE = 1 } ba_marginal_mode;

/* Pass as neg_class to pool every other class into "rest". */
#define BA_REST_CLASS (-1)

typedef struct ba_dataset ba_dataset;
typedef struct ba_model ba_model;

typedef struct ba_load_options {
  const char* missing_markers; /* comma list, e.g. "?,NA,"; NULL means ",?" */
  const char* features;        /* comma list of feature columns to keep; NULL keeps all */
  const char* ignore;          /* comma list of columns to drop; NULL drops none */
} ba_load_options;

typedef struct ba_fit_options {
  int bins;              /* max equal-frequency bins per numeric column (default 10) */
  int max_groups;        /* max value groups per categorical column (default 10) */
  int strict_groups;     /* nonzero: no empty fallback group for unseen categories */
  double smoothing;      /* pseudo-count per part (default 0.5) */
  const char* weights_path; /* "variable,weight" CSV, NULL for uniform 1 */
  ba_marginal_mode marginal_mode;
} ba_fit_options;

typedef struct ba_explain_options {
  ba_method method;
  int pos_class;
  int neg_class; /* class index or BA_REST_CLASS */
  ba_value_fn value_fn;
  uint64_t budget; /* permutations for the sampling method */
  uint64_t seed;
  uint64_t mc_samples;
  int threads; /* <= 0: BAYES_ATTRIB_THREADS, else hardware concurrency */
} ba_explain_options;

typedef struct ba_bench_options {
  size_t n;
  const size_t* dims;
  size_t n_dims;
  int parts;
  const uint64_t* budgets;
  size_t n_budgets;
  size_t sampling_rows;
  uint64_t seed;
  int repeats;
  int threads;
} ba_bench_options;

BA_API const char* ba_version(void);
BA_API const char* ba_last_error(void);
BA_API void ba_string_free(char* s);

BA_API void ba_load_options_default(ba_load_options* options);
BA_API void ba_fit_options_default(ba_fit_options* options);
BA_API void ba_explain_options_default(ba_explain_options* options);
BA_API void ba_bench_options_default(ba_bench_options* options);

/* Infers the schema (numeric iff every non-missing cell parses) and loads. */
BA_API ba_status ba_dataset_load(const char* path, const char* target,
                                 const ba_load_options* options, ba_dataset** out);
/* Loads against a model's schema; the target column is optional. */
BA_API ba_status ba_dataset_load_for_model(const ba_model* model, const char* path,
                                           const ba_load_options* options, ba_dataset** out);
BA_API void ba_dataset_free(ba_dataset* dataset);
BA_API size_t ba_dataset_num_rows(const ba_dataset* dataset);
BA_API size_t ba_dataset_num_features(const ba_dataset* dataset);

BA_API ba_status ba_model_fit(const ba_dataset* dataset, const ba_fit_options* options,
                              ba_model** out);
BA_API ba_status ba_model_save(const ba_model* model, const char* path);
BA_API ba_status ba_model_load(const char* path, ba_model** out);
BA_API void ba_model_free(ba_model* model);
BA_API size_t ba_model_num_features(const ba_model* model);
BA_API size_t ba_model_num_classes(const ba_model* model);
BA_API const char* ba_model_feature_name(const ba_model* model, size_t index);
BA_API const char* ba_model_class_label(const ba_model* model, size_t index);
/* BA_E_INVALID_ARGUMENT with the valid labels in the message when unknown. */
BA_API ba_status ba_model_class_index(const ba_model* model, const char* label, int* out);

/* Posterior of row `row` (encoded by the model); `out` holds num_classes. */
BA_API ba_status ba_model_predict_row(const ba_model* model, const ba_dataset* dataset,
                                      size_t row, double* out, size_t out_len);
/* Attribution of one row; `out` holds num_features values. */
BA_API ba_status ba_explain_row(const ba_model* model, const ba_dataset* dataset, size_t row,
                                const ba_explain_options* options, double* out, size_t out_len);

BA_API ba_status ba_explain_report(const ba_model* model, const ba_dataset* dataset,
                                   const ba_explain_options* options, char** json_out);
BA_API ba_status ba_global_report(const ba_model* model, const ba_dataset* dataset,
                                  const ba_explain_options* options, char** json_out);
BA_API ba_status ba_compare_report(const ba_model* model, const ba_dataset* dataset,
                                   const ba_explain_options* a, const ba_explain_options* b,
                                   char** json_out);
/* BA_E_VERIFICATION when the deviation exceeds tol; the report is still
 * produced. max_deviation may be NULL. */
BA_API ba_status ba_verify(const ba_model* model, const ba_dataset* dataset, size_t rows,
                           uint64_t seed, double tol, int threads, double* max_deviation,
                           char** json_out);
BA_API ba_status ba_bench(const ba_bench_options* options, char** csv_out);

/* Writes `content` to `path` through a temp file and rename. */
BA_API ba_status ba_write_file_atomic(const char* path, const char* content);

#ifdef __cplusplus
}
#endif

#endif /* BAYES_ATTRIB_H_ */
