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

#include "bayes_attrib/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_map>

#include "bayes_attrib/error.hpp"

namespace bayes_attrib::oracle {
namespace {

void check_pair(const NaiveBayesModel& model, std::size_t pos, std::size_t neg) {
  if (pos >= model.num_classes() || neg >= model.num_classes()) {
    fail(ErrorKind::kInvalidArgument, "class index out of range");
  }
  if (pos == neg) fail(ErrorKind::kInvalidArgument, "positive and negative class must differ");
}

// Uniform integer in [0, bound) by rejection; std::uniform_int_distribution is
// implementation-defined, this is not.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double binomial(std::size_t n, std::size_t k) {
  double c = 1;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(c);
}

double posterior_from_scores(std::span<const double> scores, std::size_t pos) {
  const double top = *std::max_element(scores.begin(), scores.end());
  double total = 0;
  for (double s : scores) total += std::exp(s - top);
  return std::exp(scores[pos] - top) / total;
}

// Depth-first sum over the free variables. `scores` holds one row of K log
// scores per depth; row 0 is the conditioned part.
double exact_posterior_sum(const NaiveBayesModel& model, std::span<const std::size_t> free_vars,
                           std::size_t depth, std::vector<double>& scores, std::size_t pos) {
  const std::size_t K = model.num_classes();
  std::span<const double> here(scores.data() + depth * K, K);
  if (depth == free_vars.size()) return posterior_from_scores(here, pos);
  const std::size_t var = free_vars[depth];
  const double w = model.weight(var);
  double* next = scores.data() + (depth + 1) * K;
  double total = 0;
  for (PartIndex p = 0; p < model.part_count(var); ++p) {
    for (std::size_t k = 0; k < K; ++k) next[k] = here[k] + w * model.log_cond(var, k, p);
    total += model.marginal(var, p) * exact_posterior_sum(model, free_vars, depth + 1, scores, pos);
  }
  return total;
}

template <typename Game>
std::vector<double> permutation_estimate(std::size_t d, const SamplingConfig& cfg, Game&& game) {
  std::unordered_map<Coalition, double, CoalitionHash> cache;
  auto value = [&](const Coalition& u) {
    auto it = cache.find(u);
    if (it != cache.end()) return it->second;
    double v = game(u);
    cache.emplace(u, v);
    return v;
  };
  std::vector<double> sum(d, 0.0);
  std::vector<std::size_t> order(d);
  for (std::size_t t = 0; t < cfg.n_permutations; ++t) {
    std::mt19937_64 rng(mix_seed(cfg.seed, t));
    for (std::size_t i = 0; i < d; ++i) order[i] = i;
    for (std::size_t i = d; i > 1; --i) std::swap(order[i - 1], order[bounded(rng, i)]);
    Coalition pred(d);
    double before = value(pred);
    for (std::size_t m : order) {
      pred.insert(m);
      const double after = value(pred);
      sum[m] += after - before;
      before = after;
    }
  }
  for (auto& s : sum) s /= static_cast<double>(cfg.n_permutations);
  return sum;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Coalition Coalition::from_mask(std::uint64_t mask, std::size_t num_features) {
  Coalition c(num_features);
  for (std::size_t i = 0; i < num_features && i < 64; ++i) {
    if (mask >> i & 1U) c.insert(i);
  }
  return c;
}

Coalition Coalition::full(std::size_t num_features) {
  Coalition c(num_features);
  for (std::size_t i = 0; i < num_features; ++i) c.insert(i);
  return c;
}

std::size_t Coalition::size() const {
  return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true));
}

std::uint64_t Coalition::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    h ^= members_[i] ? (i + 1) : 0;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string to_string(ValueFunction fn) {
  return fn == ValueFunction::kLogOdds ? "logodds" : "posterior";
}

ValueFunction parse_value_function(const std::string& text) {
  if (text == "logodds" || text == "log_odds") return ValueFunction::kLogOdds;
  if (text == "posterior") return ValueFunction::kPosterior;
  fail(ErrorKind::kInvalidArgument,
       "unknown value function '" + text + "' (expected logodds or posterior)");
}

void SamplingConfig::validate() const {
  if (n_permutations < 1) fail(ErrorKind::kInvalidArgument, "--budget must be >= 1");
  if (mc_samples < 1) fail(ErrorKind::kInvalidArgument, "Monte-Carlo sample count must be >= 1");
}

double value_function(const NaiveBayesModel& model, std::span<const PartIndex> x,
                      const Coalition& u, std::size_t pos, std::size_t neg) {
  check_pair(model, pos, neg);
  double v = std::log(model.prior(pos) / model.prior(neg));
  for (std::size_t k = 0; k < model.num_features(); ++k) {
    if (u.contains(k)) {
      v += model.weight(k) * std::log(model.cond(k, pos, x[k]) / model.cond(k, neg, x[k]));
    } else {
      double e = 0;
      for (PartIndex p = 0; p < model.part_count(k); ++p) {
        e += model.marginal(k, p) * std::log(model.cond(k, pos, p) / model.cond(k, neg, p));
      }
      v += model.weight(k) * e;
    }
  }
  return v;
}

double posterior_value(const NaiveBayesModel& model, std::span<const PartIndex> x,
                       const Coalition& u, std::size_t pos, const SamplingConfig& cfg,
                       std::uint64_t seed) {
  const std::size_t K = model.num_classes();
  std::vector<double> base(K);
  for (std::size_t k = 0; k < K; ++k) base[k] = std::log(model.prior(k));
  std::vector<std::size_t> free_vars;
  double combos = 1;
  for (std::size_t i = 0; i < model.num_features(); ++i) {
    if (u.contains(i)) {
      for (std::size_t k = 0; k < K; ++k) base[k] += model.weight(i) * std::log(model.cond(i, k, x[i]));
    } else {
      free_vars.push_back(i);
      combos *= model.part_count(i);
    }
  }
  if (combos <= static_cast<double>(cfg.exact_limit)) {
    std::vector<double> scores((free_vars.size() + 1) * K);
    std::copy(base.begin(), base.end(), scores.begin());
    return exact_posterior_sum(model, free_vars, 0, scores, pos);
  }

  std::mt19937_64 rng(mix_seed(seed, u.fingerprint()));
  std::vector<double> scores(K);
  double total = 0;
  for (std::size_t s = 0; s < cfg.mc_samples; ++s) {
    scores = base;
    for (std::size_t var : free_vars) {
      double r = unit_interval(rng);
      PartIndex p = 0;
      const PartIndex last = model.part_count(var) - 1;
      while (p < last && r >= model.marginal(var, p)) {
        r -= model.marginal(var, p);
        ++p;
      }
      for (std::size_t k = 0; k < K; ++k) scores[k] += model.weight(var) * model.log_cond(var, k, p);
    }
    total += posterior_from_scores(scores, pos);
  }
  return total / static_cast<double>(cfg.mc_samples);
}

Attribution shapley_bruteforce(const NaiveBayesModel& model, std::span<const PartIndex> x,
                               std::size_t pos, std::size_t neg) {
  check_pair(model, pos, neg);
  model.check_parts(x);
  const std::size_t d = model.num_features();
  if (d > kBruteforceMaxFeatures) {
    fail(ErrorKind::kInvalidArgument,
         "brute-force Shapley enumerates 2^d coalitions (O(2^d) value evaluations); refusing d = " +
             std::to_string(d) + " > " + std::to_string(kBruteforceMaxFeatures));
  }
  const std::uint64_t n_masks = std::uint64_t{1} << d;
  std::vector<double> v(n_masks);
  for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
    v[mask] = value_function(model, x, Coalition::from_mask(mask, d), pos, neg);
  }
  std::vector<double> weight_by_size(d);
  for (std::size_t s = 0; s < d; ++s) weight_by_size[s] = 1.0 / binomial(d - 1, s);

  Attribution out{Method::kBruteforce, pos, neg, std::vector<double>(d, 0.0), std::nullopt};
  for (std::size_t m = 0; m < d; ++m) {
    const std::uint64_t bit = std::uint64_t{1} << m;
    double phi = 0;
    for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
      if (mask & bit) continue;
      const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
      phi += (v[mask | bit] - v[mask]) * weight_by_size[size];
    }
    out.values[m] = phi / static_cast<double>(d);
  }
  return out;
}

std::vector<double> marginal_contribution_spread(const NaiveBayesModel& model,
                                                 std::span<const PartIndex> x, std::size_t pos,
                                                 std::size_t neg) {
  model.check_parts(x);
  const std::size_t d = model.num_features();
  if (d > kBruteforceMaxFeatures) {
    fail(ErrorKind::kInvalidArgument, "coalition enumeration refused for d > 20");
  }
  const std::uint64_t n_masks = std::uint64_t{1} << d;
  std::vector<double> v(n_masks);
  for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
    v[mask] = value_function(model, x, Coalition::from_mask(mask, d), pos, neg);
  }
  std::vector<double> spread(d);
  for (std::size_t m = 0; m < d; ++m) {
    const std::uint64_t bit = std::uint64_t{1} << m;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
      if (mask & bit) continue;
      const double diff = v[mask | bit] - v[mask];
      lo = std::min(lo, diff);
      hi = std::max(hi, diff);
    }
    spread[m] = hi - lo;
  }
  return spread;
}

PosteriorVector deprive(const NaiveBayesModel& model, std::span<const PartIndex> x,
                        std::size_t m) {
  model.check_parts(x);
  if (m >= model.num_features()) fail(ErrorKind::kInvalidArgument, "variable index out of range");
  const std::size_t K = model.num_classes();
  std::vector<double> scores(K);
  for (std::size_t k = 0; k < K; ++k) {
    double s = std::log(model.prior(k));
    for (std::size_t i = 0; i < model.num_features(); ++i) {
      if (i != m) s += model.weight(i) * std::log(model.cond(i, k, x[i]));
    }
    // The class likelihood of X_m summed over all of its parts.
    double over_parts = 0;
    for (PartIndex q = 0; q < model.part_count(m); ++q) over_parts += model.cond(m, k, q);
    scores[k] = s + std::log(over_parts);
  }
  PosteriorVector post(K);
  for (std::size_t k = 0; k < K; ++k) post[k] = posterior_from_scores(scores, k);
  return post;
}

double woe_via_deprivation(const NaiveBayesModel& model, std::span<const PartIndex> x,
                           std::size_t m, std::size_t pos, std::size_t neg) {
  check_pair(model, pos, neg);
  const auto full = model.predict_proba(x);
  const auto deprived = deprive(model, x, m);
  return std::log(full[pos] / full[neg]) - std::log(deprived[pos] / deprived[neg]);
}

Attribution shapley_sampling(const NaiveBayesModel& model, std::span<const PartIndex> x,
                             std::size_t pos, std::size_t neg, const SamplingConfig& cfg) {
  check_pair(model, pos, neg);
  cfg.validate();
  model.check_parts(x);
  const std::size_t d = model.num_features();
  Attribution out{Method::kSampling, pos, neg, {}, std::nullopt};
  if (cfg.value_fn == ValueFunction::kLogOdds) {
    out.values = permutation_estimate(
        d, cfg, [&](const Coalition& u) { return value_function(model, x, u, pos, neg); });
  } else {
    out.values = permutation_estimate(d, cfg, [&](const Coalition& u) {
      return posterior_value(model, x, u, pos, cfg, cfg.seed);
    });
  }
  return out;
}

}  // namespace bayes_attrib::oracle
