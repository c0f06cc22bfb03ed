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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bayes_attrib/nb_model.hpp"

namespace bayes_attrib {

enum class Method { kShapley, kWoe, kShapleyMulticlass, kBruteforce, kSampling };

std::string to_string(Method method);
Method parse_method(const std::string& text);

struct Attribution {
  Method method = Method::kShapley;
  std::size_t pos_class = 0;
  std::optional<std::size_t> neg_class;  // nullopt: every other class pooled ("rest")
  std::vector<double> values;
  std::optional<std::size_t> instance_index;
};

struct GlobalImportance {
  Method method = Method::kShapley;
  std::vector<double> values;  // mean |attribution| per variable
};

// E[log cond(m,pos,X_m)/cond(m,neg,X_m)] under the stored marginal of X_m.
// The weight w_m is not applied.
double expectation_term(const NaiveBayesModel& model, std::size_t m, std::size_t pos,
                        std::size_t neg);

// log P(Y_pos)/P(Y_neg) + sum_m w_m * expectation_term(m): the gap between the
// instance log-odds and the sum of its Shapley values.
double efficiency_constant(const NaiveBayesModel& model, std::size_t pos, std::size_t neg);

// Two-class explainer with the expectation terms cached, so one instance costs
// O(d) after the O(sum_i P_i) set-up.
class PairExplainer {
 public:
  PairExplainer(const NaiveBayesModel& model, std::size_t pos, std::size_t neg);

  std::size_t pos() const { return pos_; }
  std::size_t neg() const { return neg_; }
  double expectation(std::size_t m) const { return expectation_[m]; }
  double constant() const { return constant_; }

  // phi_m = w_m (log cond ratio at x_m - expectation_m)
  std::vector<double> shapley(std::span<const PartIndex> x) const;
  void shapley_into(std::span<const PartIndex> x, std::span<double> out) const;

  // WoE_m = w_m log cond ratio at x_m
  std::vector<double> woe(std::span<const PartIndex> x) const;
  void woe_into(std::span<const PartIndex> x, std::span<double> out) const;

 private:
  const NaiveBayesModel* model_;
  std::size_t pos_;
  std::size_t neg_;
  std::vector<double> expectation_;
  double constant_ = 0;
};

Attribution shapley_analytic(const NaiveBayesModel& model, std::span<const PartIndex> x,
                             std::size_t pos, std::size_t neg);

Attribution woe(const NaiveBayesModel& model, std::span<const PartIndex> x, std::size_t pos,
                std::size_t neg);

// One-vs-rest explainers for every class. combined_m = sum_c |phi_m(c vs rest)|.
class MulticlassExplainer {
 public:
  explicit MulticlassExplainer(const NaiveBayesModel& model);
  // The explainers point into pooled_; moving keeps the buffer, copying would not.
  MulticlassExplainer(const MulticlassExplainer&) = delete;
  MulticlassExplainer& operator=(const MulticlassExplainer&) = delete;
  MulticlassExplainer(MulticlassExplainer&&) = default;
  MulticlassExplainer& operator=(MulticlassExplainer&&) = default;

  std::size_t num_classes() const { return pooled_.size(); }
  const NaiveBayesModel& pooled_model(std::size_t c) const { return pooled_[c]; }

  // Signed phi(c vs rest) per class, [class][variable].
  std::vector<std::vector<double>> per_class(std::span<const PartIndex> x) const;
  std::vector<double> combined(std::span<const PartIndex> x) const;

 private:
  std::vector<NaiveBayesModel> pooled_;
  std::vector<PairExplainer> explainers_;
};

struct MulticlassAttribution {
  Attribution combined;  // method kShapleyMulticlass, non-negative
  std::vector<std::vector<double>> per_class;
};

MulticlassAttribution shapley_multiclass(const NaiveBayesModel& model,
                                         std::span<const PartIndex> x);

// values / sum(values); throws kDomain when the sum is zero.
std::vector<double> normalize(const Attribution& attribution);
std::vector<double> normalize(std::span<const double> values);

// Mean of |row[m]| over rows.
std::vector<double> mean_absolute(std::span<const std::vector<double>> rows);

// For kShapley, kWoe and kShapleyMulticlass. `neg` is ignored for multiclass;
// nullopt means one-vs-rest for the two-class methods.
GlobalImportance global_importance(const NaiveBayesModel& model, const PartDataset& parts,
                                   Method method, std::size_t pos,
                                   std::optional<std::size_t> neg);

}  // namespace bayes_attrib
