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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bayes_attrib/explain.hpp"
#include "bayes_attrib/metrics.hpp"
#include "bayes_attrib/nb_model.hpp"
#include "bayes_attrib/oracle.hpp"

// Dataset-level drivers behind the CLI commands. Every document is JSON with
// keys sorted, and depends only on its inputs and seeds.
namespace bayes_attrib::report {

struct AttributionRequest {
  Method method = Method::kShapley;
  std::size_t pos = 0;
  // nullopt: every class other than `pos` pooled into "rest". Ignored by the
  // multiclass method.
  std::optional<std::size_t> neg;
  oracle::SamplingConfig sampling;
  int threads = 1;
  // Row r of the passed dataset samples with seed mix(sampling.seed,
  // first_row + r), so a single-row call can reproduce a row of a full run.
  std::size_t first_row = 0;
};

struct RowAttributions {
  std::vector<std::vector<double>> values;                  // [row][variable]
  std::vector<std::vector<std::vector<double>>> per_class;  // multiclass only: [row][class][variable]
};

RowAttributions attribute_rows(const NaiveBayesModel& model, const PartDataset& parts,
                               const AttributionRequest& request);

std::string explain_json(const NaiveBayesModel& model, const PartDataset& parts,
                         const AttributionRequest& request);

std::string global_json(const NaiveBayesModel& model, const PartDataset& parts,
                        const AttributionRequest& request);

AgreementReport compare(const NaiveBayesModel& model, const PartDataset& parts,
                        const AttributionRequest& a, const AttributionRequest& b);

std::string compare_json(const NaiveBayesModel& model, const PartDataset& parts,
                         const AttributionRequest& a, const AttributionRequest& b);

struct VerifyResult {
  std::vector<std::size_t> rows;
  std::size_t class_pairs = 0;
  double max_deviation = 0;
  double max_spread = 0;  // v(u+m) - v(u) spread across coalitions
  double tolerance = 0;
  bool passed = false;
};

// Brute force vs closed form on `rows` rows picked with `seed`, for every
// ordered class pair.
VerifyResult verify(const NaiveBayesModel& model, const PartDataset& parts, std::size_t rows,
                    std::uint64_t seed, double tolerance, int threads);

std::string verify_json(const NaiveBayesModel& model, const VerifyResult& result);

struct BenchOptions {
  std::size_t n = 50'000;
  std::vector<std::size_t> dims{10, 20, 40, 80};
  int parts = 5;
  std::vector<std::size_t> budgets{100, 200, 400};
  std::size_t sampling_rows = 10;
  std::uint64_t seed = 42;
  int repeats = 3;
  int threads = 1;
};

struct BenchRow {
  std::string method;
  std::size_t n = 0;
  std::size_t d = 0;
  int p = 0;
  std::size_t budget = 0;
  double seconds = 0;
};

// Synthetic models: uniform priors, Dirichlet(1) conditionals, mixture
// marginals; rows sampled from the model. Analytic/WoE timings are the best of
// `repeats`; sampling uses the posterior value function on `sampling_rows`.
std::vector<BenchRow> run_bench(const BenchOptions& options);

// Header "method,n,d,p,budget,seconds".
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace bayes_attrib::report
