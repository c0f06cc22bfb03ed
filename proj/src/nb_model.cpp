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

#include "bayes_attrib/nb_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "bayes_attrib/error.hpp"
#include "bayes_attrib/io.hpp"

namespace bayes_attrib {
namespace {

using nlohmann::json;

constexpr double kSumTolerance = 1e-12;

void check_distribution(std::span<const double> probs, const std::string& what) {
  double sum = 0;
  for (double p : probs) {
    if (!std::isfinite(p) || !(p > 0) || p > 1) {
      fail(ErrorKind::kFormat, what + ": probabilities must lie in (0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    fail(ErrorKind::kFormat, what + ": probabilities sum to " + std::to_string(sum) +
                                 ", expected 1");
  }
}

std::string join_labels(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ", ";
    out += labels[i];
  }
  return out;
}

json partition_to_json(const VariablePartition& p) {
  json j;
  j["variable"] = p.variable;
  j["kind"] = p.kind == PartitionKind::kIntervals ? "intervals" : "groups";
  j["part_count"] = p.part_count;
  j["missing_part"] = p.missing_part ? json(*p.missing_part) : json(nullptr);
  if (p.kind == PartitionKind::kIntervals) {
    j["cuts"] = p.cuts;
  } else {
    j["groups"] = p.groups;
    j["fallback_group"] = p.fallback_group ? json(*p.fallback_group) : json(nullptr);
  }
  return j;
}

VariablePartition partition_from_json(const json& j) {
  VariablePartition p;
  p.variable = j.at("variable").get<std::string>();
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "intervals") {
    p.kind = PartitionKind::kIntervals;
    p.cuts = j.at("cuts").get<std::vector<double>>();
  } else if (kind == "groups") {
    p.kind = PartitionKind::kGroups;
    p.groups = j.at("groups").get<std::map<std::string, PartIndex>>();
    if (!j.at("fallback_group").is_null()) p.fallback_group = j.at("fallback_group").get<int>();
  } else {
    fail(ErrorKind::kFormat, "partition '" + p.variable + "': unknown kind '" + kind + "'");
  }
  p.part_count = j.at("part_count").get<int>();
  if (!j.at("missing_part").is_null()) p.missing_part = j.at("missing_part").get<int>();
  p.validate();
  return p;
}

}  // namespace

std::string to_string(MarginalMode mode) {
  return mode == MarginalMode::kEmpirical ? "empirical" : "mixture";
}

MarginalMode parse_marginal_mode(const std::string& text) {
  if (text == "empirical") return MarginalMode::kEmpirical;
  if (text == "mixture") return MarginalMode::kMixture;
  fail(ErrorKind::kInvalidArgument,
       "unknown marginal mode '" + text + "' (expected empirical or mixture)");
}

NaiveBayesModel::NaiveBayesModel(std::string target, std::vector<std::string> class_labels,
                                 Preprocessor preprocessor, std::vector<double> priors,
                                 ConditionalTable cond, MarginalTable marginal,
                                 std::vector<double> weights, double smoothing,
                                 MarginalMode marginal_mode)
    : target_(std::move(target)),
      class_labels_(std::move(class_labels)),
      preprocessor_(std::move(preprocessor)),
      priors_(std::move(priors)),
      cond_(std::move(cond)),
      marginal_(std::move(marginal)),
      weights_(std::move(weights)),
      smoothing_(smoothing),
      marginal_mode_(marginal_mode) {
  const std::size_t K = priors_.size();
  const std::size_t d = preprocessor_.partitions.size();
  if (K < 2) fail(ErrorKind::kFormat, "model needs at least 2 classes");
  if (class_labels_.size() != K) fail(ErrorKind::kFormat, "class_labels / priors length mismatch");
  if (cond_.size() != d || marginal_.size() != d || weights_.size() != d) {
    fail(ErrorKind::kFormat, "model tables disagree on the number of variables");
  }
  if (!(smoothing_ >= 0) || !std::isfinite(smoothing_)) {
    fail(ErrorKind::kFormat, "smoothing must be a finite non-negative number");
  }
  check_distribution(priors_, "priors");
  for (std::size_t i = 0; i < d; ++i) {
    const auto& part = preprocessor_.partitions[i];
    const std::string name = "variable '" + part.variable + "'";
    const auto P = static_cast<std::size_t>(part.part_count);
    if (!(weights_[i] >= 0 && weights_[i] <= 1)) {
      fail(ErrorKind::kFormat, name + ": weight must lie in [0, 1]");
    }
    if (marginal_[i].size() != P) fail(ErrorKind::kFormat, name + ": marginal has wrong length");
    check_distribution(marginal_[i], name + " marginal");
    if (cond_[i].size() != K) fail(ErrorKind::kFormat, name + ": conditional table has wrong class count");
    for (std::size_t k = 0; k < K; ++k) {
      if (cond_[i][k].size() != P) fail(ErrorKind::kFormat, name + ": conditional row has wrong length");
      check_distribution(cond_[i][k], name + " | " + class_labels_[k]);
    }
  }

  log_priors_.resize(K);
  for (std::size_t k = 0; k < K; ++k) log_priors_[k] = std::log(priors_[k]);
  log_cond_ = cond_;
  for (auto& per_class : log_cond_) {
    for (auto& row : per_class) {
      for (auto& v : row) v = std::log(v);
    }
  }
}

Schema NaiveBayesModel::schema() const {
  Schema s;
  s.target = target_;
  s.class_labels = class_labels_;
  for (const auto& p : preprocessor_.partitions) {
    s.features.push_back({p.variable, p.kind == PartitionKind::kIntervals
                                          ? ColumnKind::kNumeric
                                          : ColumnKind::kCategorical});
  }
  return s;
}

std::size_t NaiveBayesModel::class_index(const std::string& label) const {
  auto it = std::find(class_labels_.begin(), class_labels_.end(), label);
  if (it == class_labels_.end()) {
    fail(ErrorKind::kInvalidArgument,
         "unknown class '" + label + "'; valid labels: " + join_labels(class_labels_));
  }
  return static_cast<std::size_t>(it - class_labels_.begin());
}

void NaiveBayesModel::check_parts(std::span<const PartIndex> x) const {
  if (x.size() != num_features()) {
    fail(ErrorKind::kInvalidArgument, "part vector has " + std::to_string(x.size()) +
                                          " entries, model has " +
                                          std::to_string(num_features()) + " variables");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || x[i] >= part_count(i)) {
      fail(ErrorKind::kInvalidArgument, "part index " + std::to_string(x[i]) +
                                            " out of range for variable '" +
                                            preprocessor_.partitions[i].variable + "'");
    }
  }
}

PosteriorVector NaiveBayesModel::predict_proba(std::span<const PartIndex> x) const {
  const std::size_t K = num_classes();
  PosteriorVector scores(K);
  for (std::size_t k = 0; k < K; ++k) {
    double s = log_priors_[k];
    for (std::size_t i = 0; i < x.size(); ++i) s += weights_[i] * log_cond_[i][k][x[i]];
    scores[k] = s;
  }
  const double top = *std::max_element(scores.begin(), scores.end());
  double total = 0;
  for (auto& s : scores) {
    s = std::exp(s - top);
    total += s;
  }
  for (auto& s : scores) s /= total;
  return scores;
}

double NaiveBayesModel::log_odds(std::span<const PartIndex> x, std::size_t pos,
                                 std::size_t neg) const {
  double lr = log_priors_[pos] - log_priors_[neg];
  for (std::size_t i = 0; i < x.size(); ++i) {
    lr += weights_[i] * (log_cond_[i][pos][x[i]] - log_cond_[i][neg][x[i]]);
  }
  return lr;
}

NaiveBayesModel NaiveBayesModel::with_weights(std::vector<double> weights) const {
  return NaiveBayesModel(target_, class_labels_, preprocessor_, priors_, cond_, marginal_,
                         std::move(weights), smoothing_, marginal_mode_);
}

NaiveBayesModel NaiveBayesModel::one_vs_rest(std::size_t c) const {
  const std::size_t K = num_classes();
  if (c >= K) fail(ErrorKind::kInvalidArgument, "class index out of range");
  double rest_prior = 0;
  for (std::size_t j = 0; j < K; ++j) {
    if (j != c) rest_prior += priors_[j];
  }
  ConditionalTable cond(num_features());
  for (std::size_t i = 0; i < num_features(); ++i) {
    const auto P = static_cast<std::size_t>(part_count(i));
    std::vector<double> rest(P, 0.0);
    for (std::size_t j = 0; j < K; ++j) {
      if (j == c) continue;
      for (std::size_t p = 0; p < P; ++p) rest[p] += cond_[i][j][p] * priors_[j];
    }
    for (auto& v : rest) v /= rest_prior;
    cond[i] = {cond_[i][c], std::move(rest)};
  }
  return NaiveBayesModel(target_, {class_labels_[c], "rest"}, preprocessor_,
                         {priors_[c], rest_prior}, std::move(cond), marginal_, weights_,
                         smoothing_, marginal_mode_);
}

bool NaiveBayesModel::operator==(const NaiveBayesModel& o) const {
  return target_ == o.target_ && class_labels_ == o.class_labels_ &&
         preprocessor_ == o.preprocessor_ && priors_ == o.priors_ && cond_ == o.cond_ &&
         marginal_ == o.marginal_ && weights_ == o.weights_ && smoothing_ == o.smoothing_ &&
         marginal_mode_ == o.marginal_mode_;
}

NaiveBayesModel fit(const PartDataset& parts, const Preprocessor& prep,
                    const FitOptions& options) {
  const std::size_t N = parts.size();
  const std::size_t d = prep.partitions.size();
  const std::size_t K = parts.schema.num_classes();
  const double lambda = options.smoothing;
  if (N == 0) fail(ErrorKind::kInvalidArgument, "cannot fit a model on zero rows");
  if (parts.labels.size() != N) fail(ErrorKind::kInvalidArgument, "fit requires labeled rows");
  if (!(lambda >= 0) || !std::isfinite(lambda)) {
    fail(ErrorKind::kInvalidArgument, "--smoothing must be a finite non-negative number");
  }
  std::vector<double> weights = options.weights.value_or(std::vector<double>(d, 1.0));
  if (weights.size() != d) {
    fail(ErrorKind::kInvalidArgument, "expected " + std::to_string(d) + " weights, got " +
                                          std::to_string(weights.size()));
  }
  for (double w : weights) {
    if (!(w >= 0 && w <= 1)) fail(ErrorKind::kInvalidArgument, "weights must lie in [0, 1]");
  }

  const auto P = prep.part_counts();
  std::vector<double> class_count(K, 0.0);
  ConditionalTable counts(d);
  MarginalTable part_count(d);
  for (std::size_t i = 0; i < d; ++i) {
    counts[i].assign(K, std::vector<double>(static_cast<std::size_t>(P[i]), 0.0));
    part_count[i].assign(static_cast<std::size_t>(P[i]), 0.0);
  }
  for (std::size_t r = 0; r < N; ++r) {
    const auto k = static_cast<std::size_t>(parts.labels[r]);
    class_count[k] += 1;
    const auto& row = parts.part_rows[r];
    for (std::size_t i = 0; i < d; ++i) {
      counts[i][k][row[i]] += 1;
      part_count[i][row[i]] += 1;
    }
  }

  auto zero_count = [&](const std::string& what) {
    fail(ErrorKind::kDomain, "zero count for " + what +
                                 " with smoothing 0 (log(0) hazard); use --smoothing > 0");
  };
  std::vector<double> priors(K);
  for (std::size_t k = 0; k < K; ++k) {
    if (lambda == 0 && class_count[k] == 0) zero_count("class '" + parts.schema.class_labels[k] + "'");
    priors[k] = (class_count[k] + lambda) / (static_cast<double>(N) + lambda * static_cast<double>(K));
  }
  ConditionalTable cond = counts;
  MarginalTable marginal = part_count;
  for (std::size_t i = 0; i < d; ++i) {
    const double Pi = P[i];
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t p = 0; p < cond[i][k].size(); ++p) {
        if (lambda == 0 && counts[i][k][p] == 0) {
          zero_count("variable '" + prep.partitions[i].variable + "' part " + std::to_string(p) +
                     " in class '" + parts.schema.class_labels[k] + "'");
        }
        cond[i][k][p] = (counts[i][k][p] + lambda) / (class_count[k] + lambda * Pi);
      }
    }
    for (std::size_t p = 0; p < marginal[i].size(); ++p) {
      if (options.marginal_mode == MarginalMode::kEmpirical) {
        marginal[i][p] = (part_count[i][p] + lambda) / (static_cast<double>(N) + lambda * Pi);
      } else {
        double m = 0;
        for (std::size_t k = 0; k < K; ++k) m += cond[i][k][p] * priors[k];
        marginal[i][p] = m;
      }
    }
  }
  return NaiveBayesModel(parts.schema.target, parts.schema.class_labels, prep, std::move(priors),
                         std::move(cond), std::move(marginal), std::move(weights), lambda,
                         options.marginal_mode);
}

std::vector<double> read_weights_file(const std::filesystem::path& path,
                                      const Preprocessor& prep) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open weights file '" + path.string() + "'");
  std::vector<double> weights(prep.partitions.size(), 1.0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 || line.empty()) continue;
    auto cells = split_csv_record(line);
    if (cells.size() != 2) {
      fail(ErrorKind::kFormat, path.string() + ":" + std::to_string(line_no) +
                                   ": expected 'variable,weight'");
    }
    auto it = std::find_if(prep.partitions.begin(), prep.partitions.end(),
                           [&](const VariablePartition& p) { return p.variable == cells[0]; });
    if (it == prep.partitions.end()) {
      fail(ErrorKind::kFormat, path.string() + ":" + std::to_string(line_no) +
                                   ": unknown variable '" + cells[0] + "'");
    }
    auto w = parse_number(cells[1]);
    if (!w || *w < 0 || *w > 1) {
      fail(ErrorKind::kFormat, path.string() + ":" + std::to_string(line_no) +
                                   ": weight must be a number in [0, 1]");
    }
    weights[static_cast<std::size_t>(it - prep.partitions.begin())] = *w;
  }
  return weights;
}

std::string model_to_json(const NaiveBayesModel& model) {
  json j;
  j["format"] = "bayes-attrib-model";
  j["version"] = kModelFormatVersion;
  j["target"] = model.target();
  j["class_labels"] = model.class_labels();
  j["priors"] = model.priors();
  json parts = json::array();
  for (const auto& p : model.preprocessor().partitions) parts.push_back(partition_to_json(p));
  j["partitions"] = std::move(parts);
  j["cond"] = model.cond();
  j["marginal"] = model.marginal();
  j["weights"] = model.weights();
  j["smoothing"] = model.smoothing();
  j["marginal_mode"] = to_string(model.marginal_mode());
  return j.dump(1) + "\n";
}

NaiveBayesModel model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::kFormat, std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("version")) {
      fail(ErrorKind::kFormat, "model file has no version tag");
    }
    if (!j.at("version").is_number_integer() ||
        j.at("version").get<int>() != kModelFormatVersion) {
      fail(ErrorKind::kFormat, "unsupported model format version " + j.at("version").dump() +
                                   " (this build reads version " +
                                   std::to_string(kModelFormatVersion) + ")");
    }
    Preprocessor prep;
    for (const auto& p : j.at("partitions")) prep.partitions.push_back(partition_from_json(p));
    return NaiveBayesModel(j.at("target").get<std::string>(),
                           j.at("class_labels").get<std::vector<std::string>>(), std::move(prep),
                           j.at("priors").get<std::vector<double>>(),
                           j.at("cond").get<ConditionalTable>(),
                           j.at("marginal").get<MarginalTable>(),
                           j.at("weights").get<std::vector<double>>(),
                           j.at("smoothing").get<double>(),
                           [&] {
                             try {
                               return parse_marginal_mode(j.at("marginal_mode").get<std::string>());
                             } catch (const Error& e) {
                               fail(ErrorKind::kFormat, e.what());
                             }
                           }());
  } catch (const json::exception& e) {
    fail(ErrorKind::kFormat, std::string("malformed model file: ") + e.what());
  }
}

void save(const NaiveBayesModel& model, const std::filesystem::path& path) {
  write_file_atomic(path, model_to_json(model));
}

NaiveBayesModel load(const std::filesystem::path& path) {
  try {
    return model_from_json(read_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIo) throw;
    fail(e.kind(), path.string() + ": " + e.what());
  }
}

}  // namespace bayes_attrib
