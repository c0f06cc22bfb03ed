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

// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bayes_attrib/bayes_attrib.h"

namespace {

const std::string kDataDir = BA_TEST_DATA_DIR;

std::string data(const char* name) { return kDataDir + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "bayes_attrib_capi";
  std::filesystem::create_directories(dir);
  return dir / name;
}

struct Fixture {
  ba_dataset* dataset = nullptr;
  ba_model* model = nullptr;

  Fixture() {
    REQUIRE(ba_dataset_load(data("tictactoe.csv").c_str(), "class", nullptr, &dataset) == BA_OK);
    REQUIRE(ba_model_fit(dataset, nullptr, &model) == BA_OK);
  }
  ~Fixture() {
    ba_model_free(model);
    ba_dataset_free(dataset);
  }
};

nlohmann::json take_json(char* s) {
  auto j = nlohmann::json::parse(s);
  ba_string_free(s);
  return j;
}

}  // namespace

TEST_CASE("load and fit") {
  Fixture f;
  CHECK(ba_dataset_num_rows(f.dataset) == 958);
  CHECK(ba_dataset_num_features(f.dataset) == 9);
  CHECK(ba_model_num_features(f.model) == 9);
  CHECK(ba_model_num_classes(f.model) == 2);
  CHECK(std::string(ba_model_feature_name(f.model, 0)) == "top_left");
  CHECK(ba_model_feature_name(f.model, 9) == nullptr);
  CHECK(ba_model_class_label(f.model, 2) == nullptr);
  CHECK(std::string(ba_version()) == "1.0.0");
}

TEST_CASE("class labels") {
  Fixture f;
  int idx = -1;
  CHECK(ba_model_class_index(f.model, "negative", &idx) == BA_OK);
  CHECK(std::string(ba_model_class_label(f.model, static_cast<size_t>(idx))) == "negative");
  CHECK(ba_model_class_index(f.model, "nosuchlabel", &idx) == BA_E_INVALID_ARGUMENT);
  const std::string msg = ba_last_error();
  CHECK(msg.find("positive") != std::string::npos);
  CHECK(msg.find("negative") != std::string::npos);
}

TEST_CASE("save, load, and identical reports") {
  Fixture f;
  const auto path = scratch("model.json");
  REQUIRE(ba_model_save(f.model, path.c_str()) == BA_OK);
  ba_model* back = nullptr;
  REQUIRE(ba_model_load(path.c_str(), &back) == BA_OK);

  ba_explain_options o;
  ba_explain_options_default(&o);
  o.pos_class = 0;
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(ba_explain_report(f.model, f.dataset, &o, &a) == BA_OK);
  REQUIRE(ba_explain_report(back, f.dataset, &o, &b) == BA_OK);
  CHECK(std::string(a) == std::string(b));
  auto doc = take_json(a);
  ba_string_free(b);
  CHECK(doc["rows"].size() == 958);
  CHECK(doc["rows"][0]["values"].size() == 9);
  ba_model_free(back);
}

TEST_CASE("single-row calls agree with the report") {
  Fixture f;
  ba_explain_options o;
  ba_explain_options_default(&o);
  o.method = BA_METHOD_SAMPLING;
  o.value_fn = BA_VALUE_LOG_ODDS;
  o.budget = 20;
  ba_dataset* head = nullptr;
  // Only a few rows: the report row and single-row call share seeds by index.
  std::ofstream(scratch("head.csv")) << "top_left,top_middle,top_right,middle_left,middle_middle,"
                                        "middle_right,bottom_left,bottom_middle,bottom_right,class\n"
                                        "x,x,x,x,o,o,x,o,o,positive\n"
                                        "o,o,x,b,x,b,x,b,b,positive\n"
                                        "o,x,o,x,x,o,x,o,x,negative\n";
  REQUIRE(ba_dataset_load_for_model(f.model, scratch("head.csv").c_str(), nullptr, &head) == BA_OK);
  char* s = nullptr;
  REQUIRE(ba_explain_report(f.model, head, &o, &s) == BA_OK);
  auto doc = take_json(s);
  for (size_t r = 0; r < 3; ++r) {
    double values[9];
    REQUIRE(ba_explain_row(f.model, head, r, &o, values, 9) == BA_OK);
    for (size_t m = 0; m < 9; ++m) CHECK(values[m] == doc["rows"][r]["values"][m].get<double>());
    double post[2];
    REQUIRE(ba_model_predict_row(f.model, head, r, post, 2) == BA_OK);
    CHECK(post[0] == doc["rows"][r]["prediction"][0].get<double>());
    CHECK(post[0] + post[1] == doctest::Approx(1.0));
  }
  double small[2];
  CHECK(ba_explain_row(f.model, head, 0, &o, small, 2) == BA_E_INVALID_ARGUMENT);
  CHECK(ba_explain_row(f.model, head, 3, &o, small, 9) == BA_E_INVALID_ARGUMENT);
  ba_dataset_free(head);
}

TEST_CASE("global, compare and verify") {
  Fixture f;
  ba_explain_options a;
  ba_explain_options_default(&a);
  ba_explain_options b = a;
  b.method = BA_METHOD_WOE;
  char* s = nullptr;
  REQUIRE(ba_global_report(f.model, f.dataset, &a, &s) == BA_OK);
  CHECK(take_json(s)["global"].size() == 9);
  REQUIRE(ba_compare_report(f.model, f.dataset, &a, &b, &s) == BA_OK);
  auto cmp = take_json(s);
  CHECK(cmp["n_rows"].get<int>() + cmp["skipped_rows"].get<int>() == 958);

  double dev = -1;
  REQUIRE(ba_verify(f.model, f.dataset, 5, 42, 1e-9, 1, &dev, &s) == BA_OK);
  CHECK(dev >= 0);
  CHECK(dev < 1e-9);
  CHECK(take_json(s)["passed"] == true);
  // A zero tolerance cannot absorb rounding: the check fails, the report is still produced.
  s = nullptr;
  const auto st = ba_verify(f.model, f.dataset, 5, 42, 0.0, 1, &dev, &s);
  if (dev > 0) {
    CHECK(st == BA_E_VERIFICATION);
    REQUIRE(s != nullptr);
    CHECK(take_json(s)["passed"] == false);
  } else {
    CHECK(st == BA_OK);
    ba_string_free(s);
  }
}

TEST_CASE("multiclass on wine") {
  ba_dataset* d = nullptr;
  REQUIRE(ba_dataset_load(data("wine.csv").c_str(), "cultivar", nullptr, &d) == BA_OK);
  ba_fit_options fo;
  ba_fit_options_default(&fo);
  fo.marginal_mode = BA_MARGINAL_MIXTURE;
  ba_model* m = nullptr;
  REQUIRE(ba_model_fit(d, &fo, &m) == BA_OK);
  CHECK(ba_model_num_classes(m) == 3);
  ba_explain_options o;
  ba_explain_options_default(&o);
  o.method = BA_METHOD_MULTICLASS;
  char* s = nullptr;
  REQUIRE(ba_explain_report(m, d, &o, &s) == BA_OK);
  auto doc = take_json(s);
  CHECK(doc["rows"][0]["per_class"].size() == 3);
  // One class against another.
  o.method = BA_METHOD_SHAPLEY;
  o.pos_class = 0;
  o.neg_class = 2;
  REQUIRE(ba_global_report(m, d, &o, &s) == BA_OK);
  CHECK(take_json(s)["neg_class"] == "class_2");
  o.neg_class = 0;
  CHECK(ba_global_report(m, d, &o, &s) == BA_E_INVALID_ARGUMENT);
  ba_model_free(m);
  ba_dataset_free(d);
}

TEST_CASE("error statuses") {
  ba_dataset* d = nullptr;
  CHECK(ba_dataset_load("/nonexistent/file.csv", "class", nullptr, &d) == BA_E_IO);
  CHECK(std::string(ba_last_error()).find("/nonexistent/file.csv") != std::string::npos);
  CHECK(ba_dataset_load(data("tictactoe.csv").c_str(), "nope", nullptr, &d) == BA_E_INVALID_ARGUMENT);
  CHECK(ba_dataset_load(nullptr, "class", nullptr, &d) == BA_E_INVALID_ARGUMENT);

  std::ofstream(scratch("broken.json")) << "{\"format\": 1";
  ba_model* m = nullptr;
  CHECK(ba_model_load(scratch("broken.json").c_str(), &m) == BA_E_FORMAT);

  REQUIRE(ba_dataset_load(data("tictactoe.csv").c_str(), "class", nullptr, &d) == BA_OK);
  ba_fit_options fo;
  ba_fit_options_default(&fo);
  fo.smoothing = 0;
  fo.max_groups = 10;
  // The empty fallback group has zero counts.
  CHECK(ba_model_fit(d, &fo, &m) == BA_E_DOMAIN);
  ba_dataset_free(d);

  CHECK(ba_write_file_atomic("/nonexistent/dir/out.json", "{}") == BA_E_IO);
}

TEST_CASE("bench") {
  ba_bench_options o;
  ba_bench_options_default(&o);
  const size_t dims[] = {4};
  const uint64_t budgets[] = {3};
  o.n = 100;
  o.dims = dims;
  o.n_dims = 1;
  o.budgets = budgets;
  o.n_budgets = 1;
  o.repeats = 1;
  char* csv = nullptr;
  REQUIRE(ba_bench(&o, &csv) == BA_OK);
  const std::string text = csv;
  ba_string_free(csv);
  CHECK(text.rfind("method,n,d,p,budget,seconds\n", 0) == 0);
  CHECK(text.find("analytic,100,4,5,0,") != std::string::npos);
  CHECK(text.find("sampling,2,4,5,3,") != std::string::npos);
}
