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

#include "bayes_attrib/bayes_attrib.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "bayes_attrib/data.hpp"
#include "bayes_attrib/error.hpp"
#include "bayes_attrib/explain.hpp"
#include "bayes_attrib/io.hpp"
#include "bayes_attrib/nb_model.hpp"
#include "bayes_attrib/oracle.hpp"
#include "bayes_attrib/parallel.hpp"
#include "bayes_attrib/report.hpp"

struct ba_dataset {
  bayes_attrib::Dataset data;
};

struct ba_model {
  bayes_attrib::NaiveBayesModel model;
  std::vector<std::string> feature_names;
};

namespace {

using namespace bayes_attrib;

thread_local std::string g_last_error;

ba_status to_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return BA_E_INVALID_ARGUMENT;
    case ErrorKind::kIo: return BA_E_IO;
    case ErrorKind::kFormat: return BA_E_FORMAT;
    case ErrorKind::kDomain: return BA_E_DOMAIN;
    case ErrorKind::kVerification: return BA_E_VERIFICATION;
  }
  return BA_E_INTERNAL;
}

template <typename Fn>
ba_status guarded(Fn&& fn) {
  try {
    fn();
    return BA_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return BA_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BA_E_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) fail(ErrorKind::kInvalidArgument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::string> split_list(const char* text) {
  if (!text || !*text) return {};
  return parse_marker_list(text);
}

CsvOptions csv_options(const ba_load_options* options) {
  CsvOptions csv;
  if (!options) return csv;
  if (options->missing_markers) csv.missing_markers = parse_marker_list(options->missing_markers);
  csv.feature_columns = split_list(options->features);
  csv.ignore_columns = split_list(options->ignore);
  return csv;
}

Method to_method(ba_method m) {
  switch (m) {
    case BA_METHOD_SHAPLEY: return Method::kShapley;
    case BA_METHOD_WOE: return Method::kWoe;
    case BA_METHOD_MULTICLASS: return Method::kShapleyMulticlass;
    case BA_METHOD_BRUTEFORCE: return Method::kBruteforce;
    case BA_METHOD_SAMPLING: return Method::kSampling;
  }
  fail(ErrorKind::kInvalidArgument, "unknown method code " + std::to_string(static_cast<int>(m)));
}

report::AttributionRequest to_request(const ba_model* model, const ba_explain_options* o) {
  require(o, "options");
  const auto K = static_cast<int>(model->model.num_classes());
  report::AttributionRequest req;
  req.method = to_method(o->method);
  if (o->pos_class < 0 || o->pos_class >= K) {
    fail(ErrorKind::kInvalidArgument, "pos_class out of range");
  }
  req.pos = static_cast<std::size_t>(o->pos_class);
  if (o->neg_class == BA_REST_CLASS) {
    // A two-class "rest" is just the other class.
    if (K == 2) req.neg = 1 - req.pos;
  } else {
    if (o->neg_class < 0 || o->neg_class >= K || o->neg_class == o->pos_class) {
      fail(ErrorKind::kInvalidArgument, "neg_class must be BA_REST_CLASS or another valid class");
    }
    req.neg = static_cast<std::size_t>(o->neg_class);
  }
  req.sampling.value_fn = o->value_fn == BA_VALUE_LOG_ODDS ? oracle::ValueFunction::kLogOdds
                                                          : oracle::ValueFunction::kPosterior;
  req.sampling.n_permutations = o->budget;
  req.sampling.seed = o->seed;
  req.sampling.mc_samples = o->mc_samples;
  req.threads = resolve_threads(o->threads);
  return req;
}

PartDataset encoded(const ba_model* model, const ba_dataset* dataset) {
  require(model, "model");
  require(dataset, "dataset");
  return encode(model->model.preprocessor(), dataset->data);
}

}  // namespace

extern "C" {

const char* ba_version(void) { return "1.0.0"; }

const char* ba_last_error(void) { return g_last_error.c_str(); }

void ba_string_free(char* s) { std::free(s); }

void ba_load_options_default(ba_load_options* options) {
  if (!options) return;
  options->missing_markers = nullptr;
  options->features = nullptr;
  options->ignore = nullptr;
}

void ba_fit_options_default(ba_fit_options* options) {
  if (!options) return;
  options->bins = 10;
  options->max_groups = 10;
  options->strict_groups = 0;
  options->smoothing = 0.5;
  options->weights_path = nullptr;
  options->marginal_mode = BA_MARGINAL_EMPIRICAL;
}

void ba_explain_options_default(ba_explain_options* options) {
  if (!options) return;
  options->method = BA_METHOD_SHAPLEY;
  options->pos_class = 0;
  options->neg_class = BA_REST_CLASS;
  options->value_fn = BA_VALUE_POSTERIOR;
  options->budget = 1000;
  options->seed = 42;
  options->mc_samples = 256;
  options->threads = 0;
}

void ba_bench_options_default(ba_bench_options* options) {
  if (!options) return;
  static const size_t kDims[] = {10, 20, 40, 80};
  static const uint64_t kBudgets[] = {25, 50, 100};
  options->n = 50000;
  options->dims = kDims;
  options->n_dims = 4;
  options->parts = 5;
  options->budgets = kBudgets;
  options->n_budgets = 3;
  options->sampling_rows = 2;
  options->seed = 42;
  options->repeats = 3;
  options->threads = 1;
}

ba_status ba_dataset_load(const char* path, const char* target, const ba_load_options* options,
                          ba_dataset** out) {
  return guarded([&] {
    require(path, "path");
    require(target, "target");
    require(out, "out");
    const auto csv = csv_options(options);
    auto schema = infer_schema(path, target, csv);
    *out = new ba_dataset{load_csv(path, schema, csv, true)};
  });
}

ba_status ba_dataset_load_for_model(const ba_model* model, const char* path,
                                    const ba_load_options* options, ba_dataset** out) {
  return guarded([&] {
    require(model, "model");
    require(path, "path");
    require(out, "out");
    *out = new ba_dataset{load_csv(path, model->model.schema(), csv_options(options), false)};
  });
}

void ba_dataset_free(ba_dataset* dataset) { delete dataset; }

size_t ba_dataset_num_rows(const ba_dataset* dataset) { return dataset ? dataset->data.size() : 0; }

size_t ba_dataset_num_features(const ba_dataset* dataset) {
  return dataset ? dataset->data.schema.num_features() : 0;
}

ba_status ba_model_fit(const ba_dataset* dataset, const ba_fit_options* options, ba_model** out) {
  return guarded([&] {
    require(dataset, "dataset");
    require(out, "out");
    ba_fit_options defaults;
    ba_fit_options_default(&defaults);
    const ba_fit_options& o = options ? *options : defaults;
    PreprocessOptions popt{o.bins, o.max_groups, o.strict_groups != 0};
    auto prep = fit_partitions(dataset->data, popt);
    auto parts = encode(prep, dataset->data);
    FitOptions fopt;
    fopt.smoothing = o.smoothing;
    fopt.marginal_mode = o.marginal_mode == BA_MARGINAL_MIXTURE ? MarginalMode::kMixture
                                                                : MarginalMode::kEmpirical;
    if (o.weights_path) fopt.weights = read_weights_file(o.weights_path, prep);
    auto model = fit(parts, prep, fopt);
    std::vector<std::string> names;
    for (const auto& p : model.preprocessor().partitions) names.push_back(p.variable);
    *out = new ba_model{std::move(model), std::move(names)};
  });
}

ba_status ba_model_save(const ba_model* model, const char* path) {
  return guarded([&] {
    require(model, "model");
    require(path, "path");
    save(model->model, path);
  });
}

ba_status ba_model_load(const char* path, ba_model** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    auto model = load(path);
    std::vector<std::string> names;
    for (const auto& p : model.preprocessor().partitions) names.push_back(p.variable);
    *out = new ba_model{std::move(model), std::move(names)};
  });
}

void ba_model_free(ba_model* model) { delete model; }

size_t ba_model_num_features(const ba_model* model) { return model ? model->model.num_features() : 0; }

size_t ba_model_num_classes(const ba_model* model) { return model ? model->model.num_classes() : 0; }

const char* ba_model_feature_name(const ba_model* model, size_t index) {
  if (!model || index >= model->feature_names.size()) return nullptr;
  return model->feature_names[index].c_str();
}

const char* ba_model_class_label(const ba_model* model, size_t index) {
  if (!model || index >= model->model.num_classes()) return nullptr;
  return model->model.class_labels()[index].c_str();
}

ba_status ba_model_class_index(const ba_model* model, const char* label, int* out) {
  return guarded([&] {
    require(model, "model");
    require(label, "label");
    require(out, "out");
    *out = static_cast<int>(model->model.class_index(label));
  });
}

ba_status ba_model_predict_row(const ba_model* model, const ba_dataset* dataset, size_t row,
                               double* out, size_t out_len) {
  return guarded([&] {
    require(model, "model");
    require(dataset, "dataset");
    require(out, "out");
    if (row >= dataset->data.size()) fail(ErrorKind::kInvalidArgument, "row index out of range");
    if (out_len < model->model.num_classes()) fail(ErrorKind::kInvalidArgument, "output buffer too small");
    const auto x = encode_instance(model->model.preprocessor(), dataset->data.rows[row]);
    const auto post = model->model.predict_proba(x);
    std::copy(post.begin(), post.end(), out);
  });
}

ba_status ba_explain_row(const ba_model* model, const ba_dataset* dataset, size_t row,
                         const ba_explain_options* options, double* out, size_t out_len) {
  return guarded([&] {
    require(model, "model");
    require(dataset, "dataset");
    require(out, "out");
    if (row >= dataset->data.size()) fail(ErrorKind::kInvalidArgument, "row index out of range");
    if (out_len < model->model.num_features()) fail(ErrorKind::kInvalidArgument, "output buffer too small");
    auto req = to_request(model, options);
    PartDataset one;
    one.schema = dataset->data.schema;
    one.part_rows.push_back(encode_instance(model->model.preprocessor(), dataset->data.rows[row]));
    req.first_row = row;
    req.threads = 1;
    auto values = report::attribute_rows(model->model, one, req).values.front();
    std::copy(values.begin(), values.end(), out);
  });
}

ba_status ba_explain_report(const ba_model* model, const ba_dataset* dataset,
                            const ba_explain_options* options, char** json_out) {
  return guarded([&] {
    require(json_out, "json_out");
    const auto parts = encoded(model, dataset);
    *json_out = dup_string(report::explain_json(model->model, parts, to_request(model, options)));
  });
}

ba_status ba_global_report(const ba_model* model, const ba_dataset* dataset,
                           const ba_explain_options* options, char** json_out) {
  return guarded([&] {
    require(json_out, "json_out");
    const auto parts = encoded(model, dataset);
    *json_out = dup_string(report::global_json(model->model, parts, to_request(model, options)));
  });
}

ba_status ba_compare_report(const ba_model* model, const ba_dataset* dataset,
                            const ba_explain_options* a, const ba_explain_options* b,
                            char** json_out) {
  return guarded([&] {
    require(json_out, "json_out");
    const auto parts = encoded(model, dataset);
    *json_out = dup_string(report::compare_json(model->model, parts, to_request(model, a),
                                                to_request(model, b)));
  });
}

ba_status ba_verify(const ba_model* model, const ba_dataset* dataset, size_t rows, uint64_t seed,
                    double tol, int threads, double* max_deviation, char** json_out) {
  bool passed = true;
  ba_status st = guarded([&] {
    require(json_out, "json_out");
    const auto parts = encoded(model, dataset);
    const auto res = report::verify(model->model, parts, rows, seed, tol, resolve_threads(threads));
    if (max_deviation) *max_deviation = res.max_deviation;
    *json_out = dup_string(report::verify_json(model->model, res));
    passed = res.passed;
  });
  if (st == BA_OK && !passed) {
    g_last_error = "brute-force and closed-form Shapley values differ by more than the tolerance";
    return BA_E_VERIFICATION;
  }
  return st;
}

ba_status ba_bench(const ba_bench_options* options, char** csv_out) {
  return guarded([&] {
    require(options, "options");
    require(csv_out, "csv_out");
    report::BenchOptions opt;
    opt.n = options->n;
    opt.dims.assign(options->dims, options->dims + options->n_dims);
    opt.parts = options->parts;
    opt.budgets.assign(options->budgets, options->budgets + options->n_budgets);
    opt.sampling_rows = options->sampling_rows;
    opt.seed = options->seed;
    opt.repeats = options->repeats;
    opt.threads = resolve_threads(options->threads);
    *csv_out = dup_string(report::bench_csv(report::run_bench(opt)));
  });
}

ba_status ba_write_file_atomic(const char* path, const char* content) {
  return guarded([&] {
    require(path, "path");
    require(content, "content");
    write_file_atomic(path, content);
  });
}

}  // extern "C"
