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
#include <random>
#include <span>
#include <vector>

#include "bayes_attrib/nb_model.hpp"

namespace bayes_attrib::synthetic {

// Toy model: uniform priors over {Y0, Y1}; three binary variables v1..v3
// with categories {a, b} and P(a | Y1) / P(a | Y0) = 0.8/0.2, 0.6/0.4,
// 0.5/0.5; uniform marginals; unit weights.
NaiveBayesModel synth3();

// The 8 equiprobable part combinations of synth3, labeled Y1 when the
// majority of parts is 'a'.
PartDataset synth3_dataset();

// Uniform double in [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng);

// Symmetric Dirichlet(alpha = 1) draw of the given size.
std::vector<double> dirichlet1(std::mt19937_64& rng, std::size_t size);

// Inverse-CDF draw of an index from `probs`.
PartIndex draw_index(std::mt19937_64& rng, std::span<const double> probs);

// Generative model with uniform priors and Dirichlet(1) conditionals, and
// mixture marginals. Weights are 1 unless `random_weights`.
NaiveBayesModel random_model(std::mt19937_64& rng, std::span<const int> part_counts,
                             std::size_t num_classes, bool random_weights);

// Rows drawn from `model` (class from priors, then each part from its
// conditional, ignoring weights).
PartDataset sample_dataset(std::mt19937_64& rng, const NaiveBayesModel& model, std::size_t rows);

// A random generative model, sampled, then re-fitted with smoothing `lambda`
// and weights drawn uniformly in [0, 1].
NaiveBayesModel random_fitted_model(std::mt19937_64& rng, std::span<const int> part_counts,
                                    std::size_t num_classes, std::size_t rows, double lambda);

// Uniformly random part vector for `model`.
PartVector random_instance(std::mt19937_64& rng, const NaiveBayesModel& model);

}  // namespace bayes_attrib::synthetic
