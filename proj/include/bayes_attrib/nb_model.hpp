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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bayes_attrib/data.hpp"
#include "bayes_attrib/preprocess.hpp"

namespace bayes_attrib {

using PosteriorVector = std::vector<double>;

// [variable][class][part]
using ConditionalTable = std::vector<std::vector<std::vector<double>>>;
// [variable][part]
using MarginalTable = std::vector<std::vector<double>>;

enum class MarginalMode {
  kEmpirical,  // smoothed part frequencies over all training rows
  kMixture,    // sum_k P(part | Y_k) P(Y_k)
};

std::string to_string(MarginalMode mode);
MarginalMode parse_marginal_mode(const std::string& text);

inline constexpr int kModelFormatVersion = 1;

// Weighted naive Bayes over discretized parts:
//   P(Y_k | x) ∝ P(Y_k) * prod_i P(x_i | Y_k)^w_i
// Immutable once constructed; every accessor is safe to call concurrently.
class NaiveBayesModel {
 public:
  // Validates all invariants (normalized tables, positive probabilities,
  // weights in [0, 1], consistent shapes) and builds the log caches.
  NaiveBayesModel(std::string target, std::vector<std::string> class_labels,
                  Preprocessor preprocessor, std::vector<double> priors, ConditionalTable cond,
                  MarginalTable marginal, std::vector<double> weights, double smoothing,
                  MarginalMode marginal_mode);

  std::size_t num_features() const { return weights_.size(); }
  std::size_t num_classes() const { return priors_.size(); }
  int part_count(std::size_t var) const { return static_cast<int>(marginal_[var].size()); }

  const std::string& target() const { return target_; }
  const std::vector<std::string>& class_labels() const { return class_labels_; }
  const Preprocessor& preprocessor() const { return preprocessor_; }
  const std::vector<double>& priors() const { return priors_; }
  const ConditionalTable& cond() const { return cond_; }
  const MarginalTable& marginal() const { return marginal_; }
  const std::vector<double>& weights() const { return weights_; }
  double smoothing() const { return smoothing_; }
  MarginalMode marginal_mode() const { return marginal_mode_; }

  double prior(std::size_t k) const { return priors_[k]; }
  double cond(std::size_t var, std::size_t k, PartIndex p) const { return cond_[var][k][p]; }
  double marginal(std::size_t var, PartIndex p) const { return marginal_[var][p]; }
  double weight(std::size_t var) const { return weights_[var]; }
  double log_prior(std::size_t k) const { return log_priors_[k]; }
  double log_cond(std::size_t var, std::size_t k, PartIndex p) const {
    return log_cond_[var][k][p];
  }

  // Schema reconstructed from the partitions (interval -> numeric, groups ->
  // categorical).
  Schema schema() const;

  std::size_t class_index(const std::string& label) const;  // throws, names valid labels

  // Throws kInvalidArgument if x has the wrong length or an out-of-range part.
  void check_parts(std::span<const PartIndex> x) const;

  // Posterior evaluated in log space and normalized with the max-shift trick.
  PosteriorVector predict_proba(std::span<const PartIndex> x) const;

  // log P(Y_pos|x)/P(Y_neg|x) = log P(Y_pos)/P(Y_neg) + sum_i w_i log cond ratio.
  double log_odds(std::span<const PartIndex> x, std::size_t pos, std::size_t neg) const;

  // Same tables with the weights replaced (validated).
  NaiveBayesModel with_weights(std::vector<double> weights) const;

  // Binary model {label_c, "rest"} whose negative class pools every class but
  // c with prior-weighted mixture conditionals.
  NaiveBayesModel one_vs_rest(std::size_t c) const;

  bool operator==(const NaiveBayesModel& other) const;

 private:
  std::string target_;
  std::vector<std::string> class_labels_;
  Preprocessor preprocessor_;
  std::vector<double> priors_;
  ConditionalTable cond_;
  MarginalTable marginal_;
  std::vector<double> weights_;
  double smoothing_ = 0;
  MarginalMode marginal_mode_ = MarginalMode::kEmpirical;

  std::vector<double> log_priors_;
  ConditionalTable log_cond_;
};

struct FitOptions {
  double smoothing = 0.5;
  // nullopt means uniform weights of 1.
  std::optional<std::vector<double>> weights;
  MarginalMode marginal_mode = MarginalMode::kEmpirical;
};

// priors      = (n_k + λ) / (N + λK)
// cond(i,k,p) = (n_ikp + λ) / (N_k + λ P_i)
// marginal    = (n_ip + λ) / (N + λ P_i)   (or the class mixture)
// With λ = 0 any zero count is rejected.
NaiveBayesModel fit(const PartDataset& parts, const Preprocessor& prep,
                    const FitOptions& options = {});

// "variable,weight" CSV (header required); unlisted variables keep weight 1.
std::vector<double> read_weights_file(const std::filesystem::path& path,
                                      const Preprocessor& prep);

std::string model_to_json(const NaiveBayesModel& model);
NaiveBayesModel model_from_json(const std::string& text);

// Atomic write (temp file + rename).
void save(const NaiveBayesModel& model, const std::filesystem::path& path);
NaiveBayesModel load(const std::filesystem::path& path);

}  // namespace bayes_attrib
