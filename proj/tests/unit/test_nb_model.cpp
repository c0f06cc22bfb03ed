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

#include <json.hpp>

#include "bayes_attrib/error.hpp"
#include "bayes_attrib/nb_model.hpp"
#include "bayes_attrib/synthetic.hpp"
#include "test_support.hpp"

using namespace bayes_attrib;
using test_support::TempDir;

namespace {

PartDataset part_dataset(const std::vector<PartVector>& rows, const std::vector<int>& labels,
                         std::size_t d, std::size_t K) {
  PartDataset ds;
  ds.schema = make_index_schema(d, K);
  ds.part_rows = rows;
  ds.labels = labels;
  return ds;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInvalidArgument;
}

}  // namespace

TEST_CASE("fit: balanced classes give equal priors without smoothing") {
  const int counts[] = {2};
  auto prep = make_index_preprocessor(counts);
  auto ds = part_dataset({{0}, {1}, {0}, {1}}, {1, 1, 0, 0}, 1, 2);
  FitOptions opt;
  opt.smoothing = 0;
  auto m = fit(ds, prep, opt);
  CHECK(m.prior(0) == doctest::Approx(0.5));
  CHECK(m.prior(1) == doctest::Approx(0.5));
}

TEST_CASE("fit: smoothed conditional") {
  const int counts[] = {2};
  auto prep = make_index_preprocessor(counts);
  // Class 1 sees part 0 three times and part 1 once.
  auto ds = part_dataset({{0}, {0}, {0}, {1}, {1}, {0}}, {1, 1, 1, 1, 0, 0}, 1, 2);
  FitOptions opt;
  opt.smoothing = 1;
  auto m = fit(ds, prep, opt);
  CHECK(m.cond(0, 1, 0) == doctest::Approx(4.0 / 6.0));
  CHECK(m.cond(0, 1, 1) == doctest::Approx(2.0 / 6.0));
  CHECK(m.prior(1) == doctest::Approx(5.0 / 8.0));
  // Empirical marginal: part 0 seen 4 times of 6.
  CHECK(m.marginal(0, 0) == doctest::Approx(5.0 / 8.0));
}

TEST_CASE("fit: zero count without smoothing is a domain error") {
  const int counts[] = {2};
  auto prep = make_index_preprocessor(counts);
  auto ds = part_dataset({{0}, {0}, {1}}, {1, 1, 0}, 1, 2);
  FitOptions opt;
  opt.smoothing = 0;
  CHECK(kind_of([&] { fit(ds, prep, opt); }) == ErrorKind::kDomain);
}

TEST_CASE("fit: mixture marginals are the prior-weighted conditionals") {
  const int counts[] = {3, 2};
  auto prep = make_index_preprocessor(counts);
  auto ds = part_dataset({{0, 1}, {2, 0}, {1, 1}, {0, 0}, {2, 1}}, {0, 1, 1, 0, 1}, 2, 2);
  FitOptions opt;
  opt.marginal_mode = MarginalMode::kMixture;
  auto m = fit(ds, prep, opt);
  for (std::size_t i = 0; i < 2; ++i) {
    for (PartIndex p = 0; p < m.part_count(i); ++p) {
      CHECK(m.marginal(i, p) ==
            doctest::Approx(m.prior(0) * m.cond(i, 0, p) + m.prior(1) * m.cond(i, 1, p)));
    }
  }
}

TEST_CASE("SYNTH-3 posterior and log-odds") {
  auto m = synthetic::synth3();
  const PartVector aaa{0, 0, 0};
  auto post = m.predict_proba(aaa);
  CHECK(post[1] == doctest::Approx(0.857142857).epsilon(1e-9));
  CHECK(post[0] + post[1] == doctest::Approx(1.0));
  CHECK(m.log_odds(aaa, 1, 0) == doctest::Approx(std::log(6.0)).epsilon(1e-12));
  CHECK(m.log_odds(aaa, 1, 0) == doctest::Approx(1.791759).epsilon(1e-6));
}

TEST_CASE("zero weights leave the priors") {
  std::mt19937_64 rng(3);
  const int counts[] = {3, 4, 2};
  auto m = synthetic::random_model(rng, counts, 3, false);
  std::vector<double> pri{0.2, 0.3, 0.5};
  auto base = NaiveBayesModel(m.target(), m.class_labels(), m.preprocessor(), pri, m.cond(),
                              m.marginal(), {0, 0, 0}, m.smoothing(), m.marginal_mode());
  for (int t = 0; t < 20; ++t) {
    auto x = synthetic::random_instance(rng, base);
    auto post = base.predict_proba(x);
    for (std::size_t k = 0; k < 3; ++k) CHECK(post[k] == doctest::Approx(pri[k]).epsilon(1e-12));
  }
}

TEST_CASE("identical conditionals across classes leave the priors") {
  const int counts[] = {3};
  auto prep = make_index_preprocessor(counts);
  ConditionalTable cond{{{0.2, 0.3, 0.5}, {0.2, 0.3, 0.5}}};
  NaiveBayesModel m("y", {"a", "b"}, prep, {0.7, 0.3}, cond, {{0.2, 0.3, 0.5}}, {1.0}, 0.5,
                    MarginalMode::kEmpirical);
  for (PartIndex p = 0; p < 3; ++p) {
    const PartVector x{p};
    CHECK(m.predict_proba(x)[0] == doctest::Approx(0.7).epsilon(1e-12));
  }
}

TEST_CASE("posterior normalization and log-ratio consistency on random models") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> counts(2 + trial % 8);
    for (auto& c : counts) c = 2 + static_cast<int>(rng() % 4);
    const std::size_t K = 2 + trial % 3;
    auto m = synthetic::random_fitted_model(rng, counts, K, 200, 0.5);
    for (int t = 0; t < 10; ++t) {
      auto x = synthetic::random_instance(rng, m);
      auto post = m.predict_proba(x);
      double s = 0;
      for (double p : post) s += p;
      CHECK(std::abs(s - 1.0) < 1e-12);
      CHECK(std::abs(std::log(post[0] / post[1]) - m.log_odds(x, 0, 1)) < 1e-10);
    }
  }
}

TEST_CASE("log-space evaluation survives 60 extreme variables") {
  std::vector<int> counts(60, 2);
  auto prep = make_index_preprocessor(counts);
  ConditionalTable cond(60, {{1e-6, 1 - 1e-6}, {1 - 1e-6, 1e-6}});
  MarginalTable marg(60, {0.5, 0.5});
  NaiveBayesModel m("y", {"a", "b"}, prep, {0.5, 0.5}, cond, marg, std::vector<double>(60, 1.0),
                    0.5, MarginalMode::kEmpirical);
  PartVector x(60, 0);
  auto post = m.predict_proba(x);
  CHECK(std::isfinite(post[0]));
  CHECK(std::isfinite(post[1]));
  CHECK(post[0] + post[1] == doctest::Approx(1.0));
  CHECK(post[1] == 1.0);
  CHECK(post[0] < 1e-300);
  // Half agreeing, half disagreeing: exactly balanced.
  for (int i = 0; i < 30; ++i) x[i] = 1;
  post = m.predict_proba(x);
  CHECK(post[0] == doctest::Approx(0.5));
}

TEST_CASE("constructor enforces invariants") {
  const int counts[] = {2};
  auto prep = make_index_preprocessor(counts);
  ConditionalTable cond{{{0.5, 0.5}, {0.4, 0.6}}};
  MarginalTable marg{{0.5, 0.5}};
  auto make = [&](std::vector<double> pri, ConditionalTable c, std::vector<double> w) {
    return NaiveBayesModel("y", {"a", "b"}, prep, pri, c, marg, w, 0.5, MarginalMode::kEmpirical);
  };
  CHECK_NOTHROW(make({0.5, 0.5}, cond, {1.0}));
  CHECK(kind_of([&] { make({0.5, 0.6}, cond, {1.0}); }) == ErrorKind::kFormat);
  CHECK(kind_of([&] { make({0.5, 0.5}, {{{1.0, 0.0}, {0.4, 0.6}}}, {1.0}); }) == ErrorKind::kFormat);
  CHECK(kind_of([&] { make({0.5, 0.5}, cond, {1.5}); }) == ErrorKind::kFormat);
}

TEST_CASE("class_index names the valid labels") {
  auto m = synthetic::synth3();
  CHECK(m.class_index("Y1") == 1);
  try {
    m.class_index("nosuchlabel");
    FAIL("expected an error");
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(e.kind() == ErrorKind::kInvalidArgument);
    CHECK(msg.find("Y0") != std::string::npos);
    CHECK(msg.find("Y1") != std::string::npos);
  }
}

TEST_CASE("check_parts rejects bad instances") {
  auto m = synthetic::synth3();
  const PartVector short_x{0, 0};
  const PartVector bad{0, 2, 0};
  CHECK_THROWS_AS(m.check_parts(short_x), Error);
  CHECK_THROWS_AS(m.check_parts(bad), Error);
}

TEST_CASE("one_vs_rest pools the other classes") {
  std::mt19937_64 rng(5);
  const int counts[] = {3, 2, 4};
  auto m = synthetic::random_fitted_model(rng, counts, 3, 300, 0.5);
  auto r = m.one_vs_rest(2);
  CHECK(r.class_labels() == std::vector<std::string>{m.class_labels()[2], "rest"});
  CHECK(r.prior(0) == doctest::Approx(m.prior(2)));
  CHECK(r.prior(1) == doctest::Approx(m.prior(0) + m.prior(1)));
  for (std::size_t i = 0; i < 3; ++i) {
    for (PartIndex p = 0; p < m.part_count(i); ++p) {
      const double mix = (m.prior(0) * m.cond(i, 0, p) + m.prior(1) * m.cond(i, 1, p)) /
                         (m.prior(0) + m.prior(1));
      CHECK(r.cond(i, 1, p) == doctest::Approx(mix).epsilon(1e-12));
      CHECK(r.cond(i, 0, p) == m.cond(i, 2, p));
    }
    CHECK(r.weight(i) == m.weight(i));
  }
}

TEST_CASE("save and load round trip") {
  TempDir dir;
  std::mt19937_64 rng(9);
  const int counts[] = {2, 5, 3};
  auto m = synthetic::random_fitted_model(rng, counts, 3, 100, 0.5);
  save(m, dir.file("m.json"));
  auto back = load(dir.file("m.json"));
  CHECK(back == m);
  // Lossless doubles: explanations computed from the loaded model are identical.
  for (std::size_t k = 0; k < 3; ++k) CHECK(back.prior(k) == m.prior(k));
  CHECK(model_to_json(back) == model_to_json(m));
}

TEST_CASE("load rejects broken files") {
  TempDir dir;
  auto m = synthetic::synth3();
  auto j = nlohmann::json::parse(model_to_json(m));

  auto bad_priors = j;
  bad_priors["priors"] = {0.5, 0.6};
  CHECK(kind_of([&] { model_from_json(bad_priors.dump()); }) == ErrorKind::kFormat);

  auto bad_version = j;
  bad_version["version"] = 99;
  try {
    model_from_json(bad_version.dump());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kFormat);
    CHECK(std::string(e.what()).find("version") != std::string::npos);
  }

  CHECK(kind_of([&] { model_from_json("{not json"); }) == ErrorKind::kFormat);
  CHECK(kind_of([&] { load(dir.file("absent.json")); }) == ErrorKind::kIo);
}

TEST_CASE("weights file") {
  TempDir dir;
  const int counts[] = {2, 2, 2};
  auto prep = make_index_preprocessor(counts);
  auto p = dir.write("w.csv", "variable,weight\nx2,0.25\nx0,0\n");
  CHECK(read_weights_file(p, prep) == std::vector<double>{0.0, 1.0, 0.25});
  auto bad = dir.write("b.csv", "variable,weight\nnope,0.5\n");
  CHECK_THROWS_AS(read_weights_file(bad, prep), Error);
  auto range = dir.write("r.csv", "variable,weight\nx1,1.5\n");
  CHECK_THROWS_AS(read_weights_file(range, prep), Error);
}
