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

#include <doctest.h>

#include <cmath>
#include <random>

#include "bayes_attrib/error.hpp"
#include "bayes_attrib/explain.hpp"
#include "bayes_attrib/oracle.hpp"
#include "bayes_attrib/synthetic.hpp"

using namespace bayes_attrib;

namespace {

const double kLog4 = std::log(4.0);
const double kLog15 = std::log(1.5);

NaiveBayesModel with_marginal(const NaiveBayesModel& m, std::size_t var, std::vector<double> marg) {
  auto table = m.marginal();
  table[var] = std::move(marg);
  return NaiveBayesModel(m.target(), m.class_labels(), m.preprocessor(), m.priors(), m.cond(), table,
                         m.weights(), m.smoothing(), m.marginal_mode());
}

NaiveBayesModel with_priors(const NaiveBayesModel& m, std::vector<double> priors) {
  return NaiveBayesModel(m.target(), m.class_labels(), m.preprocessor(), std::move(priors), m.cond(),
                         m.marginal(), m.weights(), m.smoothing(), m.marginal_mode());
}

// A random fitted model whose variable `null_var` has class-independent
// conditionals.
NaiveBayesModel with_null_player(const NaiveBayesModel& m, std::size_t null_var) {
  auto cond = m.cond();
  for (std::size_t k = 1; k < m.num_classes(); ++k) cond[null_var][k] = cond[null_var][0];
  return NaiveBayesModel(m.target(), m.class_labels(), m.preprocessor(), m.priors(), cond,
                         m.marginal(), m.weights(), m.smoothing(), m.marginal_mode());
}

std::vector<int> random_counts(std::mt19937_64& rng, std::size_t d) {
  std::vector<int> counts(d);
  for (auto& c : counts) c = 2 + static_cast<int>(rng() % 4);
  return counts;
}

}  // namespace

TEST_CASE("expectation term") {
  auto m = synthetic::synth3();
  CHECK(expectation_term(m, 0, 1, 0) == doctest::Approx(0.0));
  auto skew = with_marginal(m, 0, {0.7, 0.3});
  CHECK(expectation_term(skew, 0, 1, 0) == doctest::Approx(0.554518).epsilon(1e-6));
  CHECK(expectation_term(skew, 0, 1, 0) == doctest::Approx(0.4 * kLog4).epsilon(1e-12));
  CHECK(expectation_term(with_marginal(m, 2, {0.9, 0.1}), 2, 1, 0) == 0.0);
}

TEST_CASE("SYNTH-3 Shapley and WoE") {
  auto m = synthetic::synth3();
  const PartVector aaa{0, 0, 0};
  auto phi = shapley_analytic(m, aaa, 1, 0);
  CHECK(phi.method == Method::kShapley);
  REQUIRE(phi.values.size() == 3);
  CHECK(phi.values[0] == doctest::Approx(1.386294).epsilon(1e-6));
  CHECK(phi.values[1] == doctest::Approx(0.405465).epsilon(1e-6));
  CHECK(phi.values[2] == 0.0);
  auto w = woe(m, aaa, 1, 0);
  CHECK(w.values[0] == doctest::Approx(kLog4));
  CHECK(w.values[1] == doctest::Approx(kLog15));
  CHECK(w.values[2] == 0.0);

  auto norm = normalize(phi);
  // log 4 / log 6 and log 1.5 / log 6.
  CHECK(norm[0] == doctest::Approx(0.773706).epsilon(1e-6));
  CHECK(norm[1] == doctest::Approx(0.226294).epsilon(1e-6));
  CHECK(norm[2] == 0.0);
  CHECK(efficiency_constant(m, 1, 0) == doctest::Approx(0.0));
}

TEST_CASE("skewed marginal moves Shapley but not WoE") {
  auto m = with_marginal(synthetic::synth3(), 0, {0.7, 0.3});
  const PartVector aaa{0, 0, 0};
  CHECK(woe(m, aaa, 1, 0).values[0] == doctest::Approx(1.386294).epsilon(1e-6));
  CHECK(shapley_analytic(m, aaa, 1, 0).values[0] == doctest::Approx(0.831776).epsilon(1e-6));
}

TEST_CASE("efficiency constant with unequal priors") {
  auto m = with_priors(synthetic::synth3(), {0.25, 0.75});
  CHECK(efficiency_constant(m, 1, 0) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("null player and zero weight give zero attribution") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    auto counts = random_counts(rng, 4);
    auto m = with_null_player(synthetic::random_fitted_model(rng, counts, 3, 200, 0.5), 1);
    std::vector<double> w = m.weights();
    w[3] = 0;
    auto mw = m.with_weights(w);
    for (int t = 0; t < 5; ++t) {
      auto x = synthetic::random_instance(rng, m);
      CHECK(shapley_analytic(m, x, 0, 2).values[1] == 0.0);
      CHECK(woe(m, x, 0, 2).values[1] == 0.0);
      CHECK(shapley_multiclass(m, x).combined.values[1] == doctest::Approx(0.0));
      CHECK(shapley_analytic(mw, x, 2, 1).values[3] == 0.0);
    }
  }
}

TEST_CASE("efficiency, zero expectation, antisymmetry, WoE link, entropy form") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    auto counts = random_counts(rng, 2 + trial % 9);
    const std::size_t K = 2 + trial % 3;
    auto m = synthetic::random_fitted_model(rng, counts, K, 300, 0.5);
    const std::size_t d = m.num_features();
    PairExplainer fwd(m, 0, 1);
    PairExplainer back(m, 1, 0);

    for (std::size_t v = 0; v < d; ++v) {
      // Zero expectation under the stored marginal.
      double mean = 0;
      PartVector x(d, 0);
      for (PartIndex p = 0; p < m.part_count(v); ++p) {
        x[v] = p;
        mean += m.marginal(v, p) * fwd.shapley(x)[v];
      }
      CHECK(std::abs(mean) < 1e-10);
    }

    for (int t = 0; t < 20; ++t) {
      auto x = synthetic::random_instance(rng, m);
      auto phi = fwd.shapley(x);
      auto swapped = back.shapley(x);
      auto w = fwd.woe(x);
      double sum = 0;
      for (std::size_t v = 0; v < d; ++v) {
        sum += phi[v];
        CHECK(std::abs(phi[v] + swapped[v]) <= 1e-12);
        CHECK(std::abs((w[v] - phi[v]) - m.weight(v) * fwd.expectation(v)) < 1e-12);
        // Information-content difference: [-log P(x|neg) + E log P(X|neg)] -
        // [-log P(x|pos) + E log P(X|pos)].
        double h_pos = -std::log(m.cond(v, 0, x[v]));
        double h_neg = -std::log(m.cond(v, 1, x[v]));
        for (PartIndex p = 0; p < m.part_count(v); ++p) {
          h_pos += m.marginal(v, p) * std::log(m.cond(v, 0, p));
          h_neg += m.marginal(v, p) * std::log(m.cond(v, 1, p));
        }
        if (m.weight(v) > 0) CHECK(std::abs(phi[v] / m.weight(v) - (h_neg - h_pos)) < 1e-10);
      }
      CHECK(std::abs(m.log_odds(x, 0, 1) - fwd.constant() - sum) < 1e-10);
    }
  }
}

TEST_CASE("weight linearity") {
  std::mt19937_64 rng(44);
  const int counts[] = {3, 4, 2, 5};
  auto m = synthetic::random_fitted_model(rng, counts, 2, 200, 0.5);
  auto unit = m.with_weights({1, 1, 1, 1});
  const double c[] = {0.5, 0.25, 0.125, 0.0};
  auto scaled = m.with_weights({c[0], c[1], c[2], c[3]});
  for (int t = 0; t < 20; ++t) {
    auto x = synthetic::random_instance(rng, m);
    auto base = shapley_analytic(unit, x, 0, 1).values;
    auto s = shapley_analytic(scaled, x, 0, 1).values;
    auto wb = woe(unit, x, 0, 1).values;
    auto ws = woe(scaled, x, 0, 1).values;
    for (std::size_t v = 0; v < 4; ++v) {
      // Powers of two keep the scaling exact.
      CHECK(s[v] == c[v] * base[v]);
      CHECK(ws[v] == c[v] * wb[v]);
    }
  }
}

TEST_CASE("multiclass: two classes give twice |phi|") {
  std::mt19937_64 rng(55);
  const int counts[] = {3, 2, 4};
  auto m = synthetic::random_fitted_model(rng, counts, 2, 200, 0.5);
  for (int t = 0; t < 10; ++t) {
    auto x = synthetic::random_instance(rng, m);
    auto phi = shapley_analytic(m, x, 1, 0).values;
    auto mc = shapley_multiclass(m, x);
    CHECK(mc.combined.method == Method::kShapleyMulticlass);
    REQUIRE(mc.per_class.size() == 2);
    for (std::size_t v = 0; v < 3; ++v) {
      CHECK(mc.combined.values[v] == doctest::Approx(2 * std::abs(phi[v])).epsilon(1e-12));
      CHECK(mc.per_class[1][v] == doctest::Approx(phi[v]).epsilon(1e-12));
    }
  }
}

TEST_CASE("multiclass: a variable informative for one class only scores highest") {
  const int counts[] = {2, 2, 2};
  auto prep = make_index_preprocessor(counts);
  ConditionalTable cond{
      {{0.5, 0.5}, {0.5, 0.5}, {0.9, 0.1}},
      {{0.55, 0.45}, {0.45, 0.55}, {0.5, 0.5}},
      {{0.5, 0.5}, {0.52, 0.48}, {0.48, 0.52}},
  };
  MarginalTable marg(3, {0.5, 0.5});
  NaiveBayesModel m("y", {"c0", "c1", "c2"}, prep, {1.0 / 3, 1.0 / 3, 1.0 / 3}, cond, marg,
                    {1.0, 1.0, 1.0}, 0.5, MarginalMode::kEmpirical);
  MulticlassExplainer explainer(m);
  for (std::uint64_t mask = 0; mask < 8; ++mask) {
    const PartVector x{static_cast<int>(mask & 1), static_cast<int>((mask >> 1) & 1),
                       static_cast<int>((mask >> 2) & 1)};
    auto combined = explainer.combined(x);
    CHECK(combined[0] > combined[1]);
    CHECK(combined[0] > combined[2]);
    // Each one-vs-rest term agrees with exhaustive enumeration on the pooled model.
    auto per_class = explainer.per_class(x);
    for (std::size_t c = 0; c < 3; ++c) {
      auto bf = oracle::shapley_bruteforce(explainer.pooled_model(c), x, 0, 1).values;
      for (std::size_t v = 0; v < 3; ++v) CHECK(std::abs(per_class[c][v] - bf[v]) < 1e-12);
    }
  }
}

TEST_CASE("normalize") {
  const double v[] = {2, 1, 1};
  auto n = normalize(v);
  CHECK(n == std::vector<double>{0.5, 0.25, 0.25});
  const double z[] = {0, 0, 0};
  try {
    normalize(z);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDomain);
  }
}

TEST_CASE("global importance") {
  auto m = synthetic::synth3();
  auto ds = synthetic::synth3_dataset();
  auto g = global_importance(m, ds, Method::kShapley, 1, 0);
  CHECK(g.values[0] == doctest::Approx(kLog4));
  CHECK(g.values[1] == doctest::Approx(kLog15));
  CHECK(g.values[2] == 0.0);

  PartDataset one;
  one.schema = ds.schema;
  one.part_rows = {{1, 0, 1}};
  auto single = global_importance(m, one, Method::kWoe, 1, 0);
  auto w = woe(m, one.part_rows[0], 1, 0).values;
  for (std::size_t v = 0; v < 3; ++v) CHECK(single.values[v] == std::abs(w[v]));

  auto mc = global_importance(m, ds, Method::kShapleyMulticlass, 0, std::nullopt);
  CHECK(mc.values[0] == doctest::Approx(2 * kLog4));
  CHECK(mc.values[2] == 0.0);
}

TEST_CASE("pair validation and method names") {
  auto m = synthetic::synth3();
  const PartVector x{0, 0, 0};
  CHECK_THROWS_AS(shapley_analytic(m, x, 1, 1), Error);
  CHECK_THROWS_AS(shapley_analytic(m, x, 1, 2), Error);
  for (auto method : {Method::kShapley, Method::kWoe, Method::kShapleyMulticlass,
                      Method::kBruteforce, Method::kSampling}) {
    CHECK(parse_method(to_string(method)) == method);
  }
  CHECK_THROWS_AS(parse_method("lime"), Error);
}
