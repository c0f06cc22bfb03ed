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

#include "bayes_attrib/explain.hpp"

#include <cmath>

#include "bayes_attrib/error.hpp"

namespace bayes_attrib {
namespace {

void check_pair(const NaiveBayesModel& model, std::size_t pos, std::size_t neg) {
  if (pos >= model.num_classes() || neg >= model.num_classes()) {
    fail(ErrorKind::kInvalidArgument, "class index out of range");
  }
  if (pos == neg) fail(ErrorKind::kInvalidArgument, "positive and negative class must differ");
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::kShapley: return "shapley";
    case Method::kWoe: return "woe";
    case Method::kShapleyMulticlass: return "multiclass";
    case Method::kBruteforce: return "bruteforce";
    case Method::kSampling: return "sampling";
  }
  return "unknown";
}

Method parse_method(const std::string& text) {
  if (text == "shapley") return Method::kShapley;
  if (text == "woe") return Method::kWoe;
  if (text == "multiclass" || text == "shapley_multiclass") return Method::kShapleyMulticlass;
  if (text == "bruteforce") return Method::kBruteforce;
  if (text == "sampling") return Method::kSampling;
  fail(ErrorKind::kInvalidArgument, "unknown method '" + text +
                                        "' (expected shapley, woe, multiclass, bruteforce or "
                                        "sampling)");
}

double expectation_term(const NaiveBayesModel& model, std::size_t m, std::size_t pos,
                        std::size_t neg) {
  check_pair(model, pos, neg);
  double e = 0;
  for (PartIndex p = 0; p < model.part_count(m); ++p) {
    e += model.marginal(m, p) * (model.log_cond(m, pos, p) - model.log_cond(m, neg, p));
  }
  return e;
}

double efficiency_constant(const NaiveBayesModel& model, std::size_t pos, std::size_t neg) {
  return PairExplainer(model, pos, neg).constant();
}

PairExplainer::PairExplainer(const NaiveBayesModel& model, std::size_t pos, std::size_t neg)
    : model_(&model), pos_(pos), neg_(neg) {
  check_pair(model, pos, neg);
  expectation_.resize(model.num_features());
  constant_ = model.log_prior(pos) - model.log_prior(neg);
  for (std::size_t m = 0; m < model.num_features(); ++m) {
    expectation_[m] = expectation_term(model, m, pos, neg);
    constant_ += model.weight(m) * expectation_[m];
  }
}

void PairExplainer::shapley_into(std::span<const PartIndex> x, std::span<double> out) const {
  const auto& model = *model_;
  for (std::size_t m = 0; m < x.size(); ++m) {
    const double lr = model.log_cond(m, pos_, x[m]) - model.log_cond(m, neg_, x[m]);
    out[m] = model.weight(m) * (lr - expectation_[m]);
  }
}

std::vector<double> PairExplainer::shapley(std::span<const PartIndex> x) const {
  model_->check_parts(x);
  std::vector<double> out(x.size());
  shapley_into(x, out);
  return out;
}

void PairExplainer::woe_into(std::span<const PartIndex> x, std::span<double> out) const {
  const auto& model = *model_;
  for (std::size_t m = 0; m < x.size(); ++m) {
    out[m] = model.weight(m) * (model.log_cond(m, pos_, x[m]) - model.log_cond(m, neg_, x[m]));
  }
}

std::vector<double> PairExplainer::woe(std::span<const PartIndex> x) const {
  model_->check_parts(x);
  std::vector<double> out(x.size());
  woe_into(x, out);
  return out;
}

Attribution shapley_analytic(const NaiveBayesModel& model, std::span<const PartIndex> x,
                             std::size_t pos, std::size_t neg) {
  return {Method::kShapley, pos, neg, PairExplainer(model, pos, neg).shapley(x), std::nullopt};
}

Attribution woe(const NaiveBayesModel& model, std::span<const PartIndex> x, std::size_t pos,
                std::size_t neg) {
  return {Method::kWoe, pos, neg, PairExplainer(model, pos, neg).woe(x), std::nullopt};
}

MulticlassExplainer::MulticlassExplainer(const NaiveBayesModel& model) {
  pooled_.reserve(model.num_classes());
  for (std::size_t c = 0; c < model.num_classes(); ++c) pooled_.push_back(model.one_vs_rest(c));
  explainers_.reserve(pooled_.size());
  for (const auto& m : pooled_) explainers_.emplace_back(m, 0, 1);
}

std::vector<std::vector<double>> MulticlassExplainer::per_class(
    std::span<const PartIndex> x) const {
  pooled_.front().check_parts(x);
  std::vector<std::vector<double>> out(explainers_.size(), std::vector<double>(x.size()));
  for (std::size_t c = 0; c < explainers_.size(); ++c) explainers_[c].shapley_into(x, out[c]);
  return out;
}

std::vector<double> MulticlassExplainer::combined(std::span<const PartIndex> x) const {
  std::vector<double> out(x.size(), 0.0);
  for (const auto& row : per_class(x)) {
    for (std::size_t m = 0; m < row.size(); ++m) out[m] += std::abs(row[m]);
  }
  return out;
}

MulticlassAttribution shapley_multiclass(const NaiveBayesModel& model,
                                         std::span<const PartIndex> x) {
  MulticlassExplainer explainer(model);
  MulticlassAttribution out;
  out.per_class = explainer.per_class(x);
  out.combined.method = Method::kShapleyMulticlass;
  out.combined.values.assign(x.size(), 0.0);
  for (const auto& row : out.per_class) {
    for (std::size_t m = 0; m < row.size(); ++m) out.combined.values[m] += std::abs(row[m]);
  }
  return out;
}

std::vector<double> normalize(std::span<const double> values) {
  double sum = 0;
  for (double v : values) sum += v;
  if (sum == 0 || !std::isfinite(sum)) {
    fail(ErrorKind::kDomain, "cannot normalize an attribution whose values sum to zero");
  }
  std::vector<double> out(values.begin(), values.end());
  for (auto& v : out) v /= sum;
  return out;
}

std::vector<double> normalize(const Attribution& attribution) {
  return normalize(std::span<const double>(attribution.values));
}

std::vector<double> mean_absolute(std::span<const std::vector<double>> rows) {
  if (rows.empty()) return {};
  std::vector<double> out(rows.front().size(), 0.0);
  for (const auto& row : rows) {
    for (std::size_t m = 0; m < row.size(); ++m) out[m] += std::abs(row[m]);
  }
  for (auto& v : out) v /= static_cast<double>(rows.size());
  return out;
}

GlobalImportance global_importance(const NaiveBayesModel& model, const PartDataset& parts,
                                   Method method, std::size_t pos,
                                   std::optional<std::size_t> neg) {
  if (parts.size() == 0) fail(ErrorKind::kInvalidArgument, "global importance needs at least one row");
  std::vector<std::vector<double>> rows;
  rows.reserve(parts.size());
  if (method == Method::kShapleyMulticlass) {
    MulticlassExplainer explainer(model);
    for (const auto& x : parts.part_rows) rows.push_back(explainer.combined(x));
  } else if (method == Method::kShapley || method == Method::kWoe) {
    std::optional<NaiveBayesModel> pooled;
    if (!neg) pooled.emplace(model.one_vs_rest(pos));
    const NaiveBayesModel& m = pooled ? *pooled : model;
    PairExplainer explainer(m, pooled ? 0 : pos, pooled ? 1 : *neg);
    for (const auto& x : parts.part_rows) {
      rows.push_back(method == Method::kShapley ? explainer.shapley(x) : explainer.woe(x));
    }
  } else {
    fail(ErrorKind::kInvalidArgument,
         "global_importance here covers shapley, woe and multiclass; use the report layer for " +
             to_string(method));
  }
  return {method, mean_absolute(rows)};
}

}  // namespace bayes_attrib
