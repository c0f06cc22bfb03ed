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

#include "bayes_attrib/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "bayes_attrib/error.hpp"
#include "bayes_attrib/parallel.hpp"
#include "bayes_attrib/synthetic.hpp"

namespace bayes_attrib::report {
namespace {

using nlohmann::json;

std::vector<std::string> feature_names(const NaiveBayesModel& model) {
  std::vector<std::string> out;
  for (const auto& p : model.preprocessor().partitions) out.push_back(p.variable);
  return out;
}

// The model actually explained: the original one for a class pair, the
// pooled one-vs-rest model otherwise.
struct Target {
  std::optional<NaiveBayesModel> pooled;
  const NaiveBayesModel* model = nullptr;
  std::size_t pos = 0;
  std::size_t neg = 1;
};

Target resolve_target(const NaiveBayesModel& model, const AttributionRequest& req) {
  Target t;
  if (req.pos >= model.num_classes()) fail(ErrorKind::kInvalidArgument, "class index out of range");
  if (req.neg) {
    if (*req.neg >= model.num_classes() || *req.neg == req.pos) {
      fail(ErrorKind::kInvalidArgument, "negative class must be a different valid class");
    }
    t.model = &model;
    t.pos = req.pos;
    t.neg = *req.neg;
  } else {
    t.pooled.emplace(model.one_vs_rest(req.pos));
    t.model = &*t.pooled;
  }
  return t;
}

json describe(const NaiveBayesModel& model, const AttributionRequest& req) {
  json j;
  j["method"] = to_string(req.method);
  if (req.method == Method::kShapleyMulticlass) {
    j["pos_class"] = nullptr;
    j["neg_class"] = "rest";
  } else {
    j["pos_class"] = model.class_labels()[req.pos];
    j["neg_class"] = req.neg ? json(model.class_labels()[*req.neg]) : json("rest");
  }
  if (req.method == Method::kSampling) {
    j["value_fn"] = oracle::to_string(req.sampling.value_fn);
    j["budget"] = req.sampling.n_permutations;
    j["seed"] = req.sampling.seed;
    j["mc_samples"] = req.sampling.mc_samples;
    j["exact_limit"] = req.sampling.exact_limit;
  }
  return j;
}

}  // namespace

RowAttributions attribute_rows(const NaiveBayesModel& model, const PartDataset& parts,
                               const AttributionRequest& req) {
  for (const auto& x : parts.part_rows) model.check_parts(x);
  const std::size_t N = parts.size();
  const std::size_t d = model.num_features();
  RowAttributions out;
  out.values.assign(N, std::vector<double>(d));

  if (req.method == Method::kShapleyMulticlass) {
    MulticlassExplainer explainer(model);
    out.per_class.resize(N);
    parallel_for(N, req.threads, [&](std::size_t r) {
      out.per_class[r] = explainer.per_class(parts.part_rows[r]);
      auto& v = out.values[r];
      for (const auto& row : out.per_class[r]) {
        for (std::size_t m = 0; m < d; ++m) v[m] += std::abs(row[m]);
      }
    });
    return out;
  }

  Target t = resolve_target(model, req);
  switch (req.method) {
    case Method::kShapley:
    case Method::kWoe: {
      PairExplainer explainer(*t.model, t.pos, t.neg);
      const bool shapley = req.method == Method::kShapley;
      parallel_for(N, req.threads, [&](std::size_t r) {
        if (shapley) {
          explainer.shapley_into(parts.part_rows[r], out.values[r]);
        } else {
          explainer.woe_into(parts.part_rows[r], out.values[r]);
        }
      });
      break;
    }
    case Method::kBruteforce:
      if (d > oracle::kBruteforceMaxFeatures) {
        fail(ErrorKind::kInvalidArgument,
             "brute-force Shapley costs O(2^d); refusing d = " + std::to_string(d) + " > 20");
      }
      parallel_for(N, req.threads, [&](std::size_t r) {
        out.values[r] = oracle::shapley_bruteforce(*t.model, parts.part_rows[r], t.pos, t.neg).values;
      });
      break;
    case Method::kSampling:
      req.sampling.validate();
      parallel_for(N, req.threads, [&](std::size_t r) {
        oracle::SamplingConfig cfg = req.sampling;
        cfg.seed = oracle::mix_seed(req.sampling.seed, req.first_row + r);
        out.values[r] = oracle::shapley_sampling(*t.model, parts.part_rows[r], t.pos, t.neg, cfg).values;
      });
      break;
    case Method::kShapleyMulticlass:
      break;
  }
  return out;
}

std::string explain_json(const NaiveBayesModel& model, const PartDataset& parts,
                         const AttributionRequest& req) {
  const auto attributions = attribute_rows(model, parts, req);
  json doc = describe(model, req);
  doc["features"] = feature_names(model);
  doc["class_labels"] = model.class_labels();
  json rows = json::array();
  for (std::size_t r = 0; r < parts.size(); ++r) {
    json row;
    row["index"] = r;
    row["values"] = attributions.values[r];
    row["prediction"] = model.predict_proba(parts.part_rows[r]);
    if (!attributions.per_class.empty()) {
      json signed_rows;
      for (std::size_t c = 0; c < model.num_classes(); ++c) {
        signed_rows[model.class_labels()[c]] = attributions.per_class[r][c];
      }
      row["per_class"] = std::move(signed_rows);
    }
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  doc["global"] = mean_absolute(attributions.values);
  return doc.dump(1) + "\n";
}

std::string global_json(const NaiveBayesModel& model, const PartDataset& parts,
                        const AttributionRequest& req) {
  if (parts.size() == 0) fail(ErrorKind::kInvalidArgument, "global importance needs at least one row");
  const auto attributions = attribute_rows(model, parts, req);
  json doc = describe(model, req);
  doc["features"] = feature_names(model);
  doc["n_rows"] = parts.size();
  doc["global"] = mean_absolute(attributions.values);
  return doc.dump(1) + "\n";
}

AgreementReport compare(const NaiveBayesModel& model, const PartDataset& parts,
                        const AttributionRequest& a, const AttributionRequest& b) {
  if (parts.size() == 0) fail(ErrorKind::kInvalidArgument, "compare needs at least one row");
  const auto rows_a = attribute_rows(model, parts, a);
  const auto rows_b = attribute_rows(model, parts, b);
  AgreementReport rep;
  rep.method_a = to_string(a.method);
  rep.method_b = to_string(b.method);
  rowwise_agreement(rows_a.values, rows_b.values, rep);
  global_agreement(mean_absolute(rows_a.values), mean_absolute(rows_b.values), rep);
  return rep;
}

std::string compare_json(const NaiveBayesModel& model, const PartDataset& parts,
                         const AttributionRequest& a, const AttributionRequest& b) {
  const auto rep = compare(model, parts, a, b);
  json doc;
  doc["a"] = describe(model, a);
  doc["b"] = describe(model, b);
  doc["method_a"] = rep.method_a;
  doc["method_b"] = rep.method_b;
  doc["n_rows"] = rep.n_rows;
  doc["skipped_rows"] = rep.skipped_rows;
  doc["rowwise_kendall_mean"] = rep.rowwise_kendall_mean;
  doc["rowwise_kendall_std"] = rep.rowwise_kendall_std;
  doc["rowwise_std_kind"] = "population";
  doc["global_pearson"] = rep.global_pearson;
  doc["global_kendall"] = rep.global_kendall;
  return doc.dump(1) + "\n";
}

VerifyResult verify(const NaiveBayesModel& model, const PartDataset& parts, std::size_t rows,
                    std::uint64_t seed, double tolerance, int threads) {
  if (model.num_features() > oracle::kBruteforceMaxFeatures) {
    fail(ErrorKind::kInvalidArgument, "verify enumerates 2^d coalitions (O(2^d) cost); refusing d = " +
                                          std::to_string(model.num_features()) + " > 20");
  }
  if (parts.size() == 0) fail(ErrorKind::kInvalidArgument, "verify needs at least one row");
  if (!(tolerance >= 0)) fail(ErrorKind::kInvalidArgument, "--tol must be non-negative");
  VerifyResult res;
  res.tolerance = tolerance;
  std::vector<std::size_t> order(parts.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(oracle::mix_seed(seed, 0));
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng() % i]);
  }
  order.resize(std::min(rows, order.size()));
  std::sort(order.begin(), order.end());
  res.rows = order;

  const std::size_t K = model.num_classes();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t p = 0; p < K; ++p) {
    for (std::size_t n = 0; n < K; ++n) {
      if (p != n) pairs.emplace_back(p, n);
    }
  }
  res.class_pairs = pairs.size();
  std::vector<PairExplainer> explainers;
  for (auto [p, n] : pairs) explainers.emplace_back(model, p, n);
  std::vector<double> dev(order.size(), 0.0), spread(order.size(), 0.0);
  parallel_for(order.size(), threads, [&](std::size_t i) {
    const auto& x = parts.part_rows[order[i]];
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      const auto analytic = explainers[c].shapley(x);
      const auto brute = oracle::shapley_bruteforce(model, x, pairs[c].first, pairs[c].second);
      for (std::size_t m = 0; m < analytic.size(); ++m) {
        dev[i] = std::max(dev[i], std::abs(analytic[m] - brute.values[m]));
      }
      for (double s : oracle::marginal_contribution_spread(model, x, pairs[c].first, pairs[c].second)) {
        spread[i] = std::max(spread[i], s);
      }
    }
  });
  for (std::size_t i = 0; i < order.size(); ++i) {
    res.max_deviation = std::max(res.max_deviation, dev[i]);
    res.max_spread = std::max(res.max_spread, spread[i]);
  }
  res.passed = res.max_deviation <= tolerance;
  return res;
}

std::string verify_json(const NaiveBayesModel& model, const VerifyResult& res) {
  json doc;
  doc["rows"] = res.rows;
  doc["class_pairs"] = res.class_pairs;
  doc["num_features"] = model.num_features();
  doc["max_deviation"] = res.max_deviation;
  doc["max_marginal_contribution_spread"] = res.max_spread;
  doc["tolerance"] = res.tolerance;
  doc["passed"] = res.passed;
  return doc.dump(1) + "\n";
}

std::vector<BenchRow> run_bench(const BenchOptions& opt) {
  if (opt.n < 1 || opt.parts < 1 || opt.repeats < 1 || opt.dims.empty()) {
    fail(ErrorKind::kInvalidArgument, "bench: n, p, repeats and d must be positive");
  }
  using clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  for (std::size_t d : opt.dims) {
    if (d < 1) fail(ErrorKind::kInvalidArgument, "bench: d must be >= 1");
    std::mt19937_64 rng(oracle::mix_seed(opt.seed, d));
    const std::vector<int> counts(d, opt.parts);
    const auto model = synthetic::random_model(rng, counts, 2, false);
    const auto parts = synthetic::sample_dataset(rng, model, opt.n);

    for (Method method : {Method::kShapley, Method::kWoe}) {
      double best = INFINITY;
      for (int rep = 0; rep < opt.repeats; ++rep) {
        AttributionRequest req;
        req.method = method;
        req.pos = 1;
        req.neg = 0;
        req.threads = opt.threads;
        const auto t0 = clock::now();
        auto out = attribute_rows(model, parts, req);
        const auto t1 = clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
      }
      rows.push_back({method == Method::kShapley ? "analytic" : "woe", opt.n, d, opt.parts, 0, best});
    }

    if (opt.sampling_rows == 0) continue;
    PartDataset subset;
    subset.schema = parts.schema;
    const std::size_t k = std::min(opt.sampling_rows, parts.size());
    subset.part_rows.assign(parts.part_rows.begin(), parts.part_rows.begin() + static_cast<std::ptrdiff_t>(k));
    for (std::size_t budget : opt.budgets) {
      AttributionRequest req;
      req.method = Method::kSampling;
      req.pos = 1;
      req.neg = 0;
      req.threads = opt.threads;
      req.sampling.n_permutations = budget;
      req.sampling.seed = opt.seed;
      req.sampling.value_fn = oracle::ValueFunction::kPosterior;
      const auto t0 = clock::now();
      auto out = attribute_rows(model, subset, req);
      const auto t1 = clock::now();
      rows.push_back({"sampling", k, d, opt.parts, budget,
                      std::chrono::duration<double>(t1 - t0).count()});
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "method,n,d,p,budget,seconds\n";
  out.precision(9);
  for (const auto& r : rows) {
    out << r.method << ',' << r.n << ',' << r.d << ',' << r.p << ',' << r.budget << ','
        << r.seconds << '\n';
  }
  return out.str();
}

}  // namespace bayes_attrib::report
