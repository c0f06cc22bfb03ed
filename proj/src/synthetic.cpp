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

#include "bayes_attrib/synthetic.hpp"

#include <cmath>

#include "bayes_attrib/error.hpp"

namespace bayes_attrib::synthetic {

NaiveBayesModel synth3() {
  Preprocessor prep;
  for (const char* name : {"v1", "v2", "v3"}) {
    VariablePartition p;
    p.variable = name;
    p.kind = PartitionKind::kGroups;
    p.groups = {{"a", 0}, {"b", 1}};
    p.part_count = 2;
    prep.partitions.push_back(std::move(p));
  }
  // [variable][class][part], classes {Y0, Y1}, parts {a, b}.
  ConditionalTable cond = {
      {{0.2, 0.8}, {0.8, 0.2}},
      {{0.4, 0.6}, {0.6, 0.4}},
      {{0.5, 0.5}, {0.5, 0.5}},
  };
  MarginalTable marginal(3, std::vector<double>{0.5, 0.5});
  return NaiveBayesModel("y", {"Y0", "Y1"}, std::move(prep), {0.5, 0.5}, std::move(cond),
                         std::move(marginal), {1.0, 1.0, 1.0}, 0.0, MarginalMode::kEmpirical);
}

PartDataset synth3_dataset() {
  PartDataset ds;
  ds.schema = synth3().schema();
  for (int mask = 0; mask < 8; ++mask) {
    PartVector x = {mask & 1, mask >> 1 & 1, mask >> 2 & 1};
    const int a_count = (x[0] == 0) + (x[1] == 0) + (x[2] == 0);
    ds.part_rows.push_back(x);
    ds.labels.push_back(a_count >= 2 ? 1 : 0);
  }
  return ds;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> dirichlet1(std::mt19937_64& rng, std::size_t size) {
  std::vector<double> out(size);
  double total = 0;
  for (auto& v : out) {
    v = -std::log1p(-uniform01(rng));
    // Guard against an exact zero draw, which would make a zero probability.
    if (v < 1e-12) v = 1e-12;
    total += v;
  }
  for (auto& v : out) v /= total;
  return out;
}

PartIndex draw_index(std::mt19937_64& rng, std::span<const double> probs) {
  double r = uniform01(rng);
  const auto last = static_cast<PartIndex>(probs.size()) - 1;
  PartIndex i = 0;
  while (i < last && r >= probs[static_cast<std::size_t>(i)]) {
    r -= probs[static_cast<std::size_t>(i)];
    ++i;
  }
  return i;
}

NaiveBayesModel random_model(std::mt19937_64& rng, std::span<const int> part_counts,
                             std::size_t num_classes, bool random_weights) {
  const std::size_t d = part_counts.size();
  std::vector<double> priors(num_classes, 1.0 / static_cast<double>(num_classes));
  ConditionalTable cond(d);
  MarginalTable marginal(d);
  std::vector<double> weights(d, 1.0);
  for (std::size_t i = 0; i < d; ++i) {
    const auto P = static_cast<std::size_t>(part_counts[i]);
    marginal[i].assign(P, 0.0);
    for (std::size_t k = 0; k < num_classes; ++k) {
      cond[i].push_back(dirichlet1(rng, P));
      for (std::size_t p = 0; p < P; ++p) marginal[i][p] += cond[i][k][p] * priors[k];
    }
    if (random_weights) weights[i] = uniform01(rng);
  }
  return NaiveBayesModel("class", make_index_schema(d, num_classes).class_labels,
                         make_index_preprocessor(part_counts), std::move(priors), std::move(cond),
                         std::move(marginal), std::move(weights), 0.0, MarginalMode::kMixture);
}

PartDataset sample_dataset(std::mt19937_64& rng, const NaiveBayesModel& model, std::size_t rows) {
  PartDataset ds;
  ds.schema = model.schema();
  ds.part_rows.reserve(rows);
  ds.labels.reserve(rows);
  PartVector x(model.num_features());
  for (std::size_t r = 0; r < rows; ++r) {
    const PartIndex k = draw_index(rng, model.priors());
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = draw_index(rng, model.cond()[i][static_cast<std::size_t>(k)]);
    }
    ds.part_rows.push_back(x);
    ds.labels.push_back(k);
  }
  return ds;
}

NaiveBayesModel random_fitted_model(std::mt19937_64& rng, std::span<const int> part_counts,
                                    std::size_t num_classes, std::size_t rows, double lambda) {
  const auto generator = random_model(rng, part_counts, num_classes, false);
  const auto parts = sample_dataset(rng, generator, rows);
  std::vector<double> weights(part_counts.size());
  for (auto& w : weights) w = uniform01(rng);
  FitOptions options;
  options.smoothing = lambda;
  options.weights = std::move(weights);
  return fit(parts, generator.preprocessor(), options);
}

PartVector random_instance(std::mt19937_64& rng, const NaiveBayesModel& model) {
  PartVector x(model.num_features());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = static_cast<PartIndex>(rng() % static_cast<std::uint64_t>(model.part_count(i)));
  }
  return x;
}

}  // namespace bayes_attrib::synthetic
