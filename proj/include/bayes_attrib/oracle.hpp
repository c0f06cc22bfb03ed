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
#include <span>
#include <string>
#include <vector>

#include "bayes_attrib/explain.hpp"
#include "bayes_attrib/nb_model.hpp"

// Reference computations that do not go through the closed-form explainers:
// coalition games evaluated term by term, exhaustive Shapley enumeration,
// marginalization of one variable, and a Monte-Carlo permutation estimator.
namespace bayes_attrib::oracle {

// Subset of the d variables.
class Coalition {
 public:
  explicit Coalition(std::size_t num_features) : members_(num_features, false) {}
  static Coalition from_mask(std::uint64_t mask, std::size_t num_features);
  static Coalition full(std::size_t num_features);

  std::size_t num_features() const { return members_.size(); }
  bool contains(std::size_t i) const { return members_[i]; }
  void insert(std::size_t i) { members_[i] = true; }
  void erase(std::size_t i) { members_[i] = false; }
  std::size_t size() const;
  // Stable across platforms (FNV-1a over member indices).
  std::uint64_t fingerprint() const;

  bool operator==(const Coalition&) const = default;

 private:
  std::vector<bool> members_;
};

struct CoalitionHash {
  std::size_t operator()(const Coalition& c) const { return static_cast<std::size_t>(c.fingerprint()); }
};

enum class ValueFunction { kLogOdds, kPosterior };

std::string to_string(ValueFunction fn);
ValueFunction parse_value_function(const std::string& text);

struct SamplingConfig {
  std::size_t n_permutations = 1000;
  std::uint64_t seed = 42;
  ValueFunction value_fn = ValueFunction::kPosterior;
  // Posterior mode: the conditional expectation is summed exactly while the
  // product of free part counts stays within this limit, otherwise estimated
  // from `mc_samples` draws of the stored marginals.
  std::uint64_t exact_limit = 1'000'000;
  std::size_t mc_samples = 256;

  void validate() const;
};

// Log-odds game: variables in u contribute their instance term, the others
// their expectation under the stored marginal.
double value_function(const NaiveBayesModel& model, std::span<const PartIndex> x,
                      const Coalition& u, std::size_t pos, std::size_t neg);

// E[P(Y_pos | X) | X_u = x_u] with the free variables drawn independently from
// their stored marginals. `seed` only matters on the Monte-Carlo path.
double posterior_value(const NaiveBayesModel& model, std::span<const PartIndex> x,
                       const Coalition& u, std::size_t pos, const SamplingConfig& cfg,
                       std::uint64_t seed);

inline constexpr std::size_t kBruteforceMaxFeatures = 20;

// phi_m = (1/d) sum_{u ⊆ -m} (v(u+m) - v(u)) / C(d-1, |u|), full enumeration
// of the 2^d coalitions (lexicographic by bitmask).
Attribution shapley_bruteforce(const NaiveBayesModel& model, std::span<const PartIndex> x,
                               std::size_t pos, std::size_t neg);

// For each m: max - min over u ⊆ -m of v(u+m) - v(u).
std::vector<double> marginal_contribution_spread(const NaiveBayesModel& model,
                                                 std::span<const PartIndex> x, std::size_t pos,
                                                 std::size_t neg);

// P(Y | x without x_m): the joint is summed over the parts of X_m.
PosteriorVector deprive(const NaiveBayesModel& model, std::span<const PartIndex> x,
                        std::size_t m);

// log of the posterior odds over the deprived posterior odds.
double woe_via_deprivation(const NaiveBayesModel& model, std::span<const PartIndex> x,
                           std::size_t m, std::size_t pos, std::size_t neg);

// Permutation estimator: mean over random orderings of v(pred ∪ {m}) - v(pred).
// Deterministic given cfg.seed; permutation t is drawn from a generator seeded
// by (seed, t).
Attribution shapley_sampling(const NaiveBayesModel& model, std::span<const PartIndex> x,
                             std::size_t pos, std::size_t neg, const SamplingConfig& cfg);

// SplitMix64 finalizer, used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace bayes_attrib::oracle
