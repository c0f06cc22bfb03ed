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

// bayes-attrib: train weighted naive Bayes models and explain their
// predictions from the command line.
//
//   bayes-attrib train   --data D --target T --out M
//   bayes-attrib explain --model M --data D --method shapley --class L --out F
//   bayes-attrib global  --model M --data D --method woe --class L
//   bayes-attrib compare --model M --data D --a shapley --b woe --class L
//   bayes-attrib verify  --model M --data D --rows 20 --tol 1e-9
//   bayes-attrib bench   --out timing.csv
//
// Exit status: 0 success, 1 usage error, 2 verification failure,
// 3 I/O, format or numerical error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bayes_attrib/bayes_attrib.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitRuntime = 3;

// Raised to leave a command with a given exit status once the message has
// been printed.
struct CommandFailure {
  int code;
};

int exit_code(ba_status st) {
  switch (st) {
    case BA_OK: return kExitOk;
    case BA_E_INVALID_ARGUMENT: return kExitUsage;
    case BA_E_VERIFICATION: return kExitVerification;
    default: return kExitRuntime;
  }
}

void check(ba_status st, const std::string& context) {
  if (st == BA_OK) return;
  std::cerr << "bayes-attrib: " << context << ": " << ba_last_error() << "\n";
  throw CommandFailure{exit_code(st)};
}

[[noreturn]] void usage_error(const std::string& message) {
  std::cerr << "bayes-attrib: " << message << "\n";
  throw CommandFailure{kExitUsage};
}

struct DatasetDeleter {
  void operator()(ba_dataset* d) const { ba_dataset_free(d); }
};
struct ModelDeleter {
  void operator()(ba_model* m) const { ba_model_free(m); }
};
struct StringDeleter {
  void operator()(char* s) const { ba_string_free(s); }
};
using DatasetPtr = std::unique_ptr<ba_dataset, DatasetDeleter>;
using ModelPtr = std::unique_ptr<ba_model, ModelDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct LoadFlags {
  std::optional<std::string> missing;
  std::string features;
  std::string ignore;

  ba_load_options options() const {
    ba_load_options o;
    ba_load_options_default(&o);
    if (missing) o.missing_markers = missing->c_str();
    if (!features.empty()) o.features = features.c_str();
    if (!ignore.empty()) o.ignore = ignore.c_str();
    return o;
  }
};

void add_load_flags(CLI::App* cmd, LoadFlags& flags) {
  cmd->add_option("--missing", flags.missing, "Comma-separated missing-value markers (default \",?\")");
  cmd->add_option("--features", flags.features, "Comma-separated feature columns to keep");
  cmd->add_option("--ignore", flags.ignore, "Comma-separated columns to drop");
}

// Writes `content` atomically to `out`, or to stdout when no path is given.
void emit(const std::optional<std::string>& out, const char* content) {
  if (!out) {
    std::fputs(content, stdout);
    std::fflush(stdout);
    return;
  }
  check(ba_write_file_atomic(out->c_str(), content), "--out " + *out);
}

ModelPtr load_model(const std::string& path) {
  ba_model* m = nullptr;
  check(ba_model_load(path.c_str(), &m), "--model " + path);
  return ModelPtr(m);
}

DatasetPtr load_for_model(const ba_model* model, const std::string& path, const LoadFlags& flags) {
  const auto opts = flags.options();
  ba_dataset* d = nullptr;
  check(ba_dataset_load_for_model(model, path.c_str(), &opts, &d), "--data " + path);
  return DatasetPtr(d);
}

const std::map<std::string, ba_method> kMethods{
    {"shapley", BA_METHOD_SHAPLEY},       {"woe", BA_METHOD_WOE},
    {"multiclass", BA_METHOD_MULTICLASS}, {"bruteforce", BA_METHOD_BRUTEFORCE},
    {"sampling", BA_METHOD_SAMPLING},
};

const std::map<std::string, ba_value_fn> kValueFns{
    {"posterior", BA_VALUE_POSTERIOR},
    {"logodds", BA_VALUE_LOG_ODDS},
};

struct ExplainFlags {
  std::string method = "shapley";
  std::optional<std::string> pos_class;
  std::optional<std::string> neg_class;
  std::string value_fn = "posterior";
  std::uint64_t budget = 1000;
  std::uint64_t seed = 42;
  std::uint64_t mc_samples = 256;
  int threads = 0;
};

void add_explain_flags(CLI::App* cmd, ExplainFlags& flags, bool with_method) {
  if (with_method) {
    cmd->add_option("--method", flags.method, "shapley | woe | multiclass | bruteforce | sampling")
        ->check(CLI::IsMember(kMethods))
        ->capture_default_str();
  }
  cmd->add_option("--class", flags.pos_class, "Class label explained (required unless --method multiclass)");
  cmd->add_option("--neg-class", flags.neg_class, "Opposing class label; defaults to all other classes pooled");
  cmd->add_option("--value-fn", flags.value_fn, "Sampling value function: posterior | logodds")
      ->check(CLI::IsMember(kValueFns))
      ->capture_default_str();
  cmd->add_option("--budget", flags.budget, "Permutations drawn by the sampling method")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", flags.seed, "Sampling seed")->capture_default_str();
  cmd->add_option("--mc-samples", flags.mc_samples,
                  "Monte-Carlo draws per coalition when exact summation is too large")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--threads", flags.threads,
                  "Worker threads (default: BAYES_ATTRIB_THREADS, else all cores)");
}

int class_index(const ba_model* model, const std::string& label, const char* flag) {
  int idx = -1;
  check(ba_model_class_index(model, label.c_str(), &idx), flag);
  return idx;
}

ba_explain_options explain_options(const ba_model* model, const ExplainFlags& flags,
                                   const std::string& method) {
  ba_explain_options o;
  ba_explain_options_default(&o);
  o.method = kMethods.at(method);
  if (o.method != BA_METHOD_MULTICLASS) {
    if (!flags.pos_class) usage_error("--class is required for --method " + method);
    o.pos_class = class_index(model, *flags.pos_class, "--class");
    if (flags.neg_class) o.neg_class = class_index(model, *flags.neg_class, "--neg-class");
  }
  o.value_fn = kValueFns.at(flags.value_fn);
  o.budget = flags.budget;
  o.seed = flags.seed;
  o.mc_samples = flags.mc_samples;
  o.threads = flags.threads;
  return o;
}

struct TrainCommand {
  std::string data;
  std::string target;
  std::string out;
  LoadFlags load;
  int bins = 10;
  int max_groups = 10;
  bool strict_groups = false;
  double smoothing = 0.5;
  std::optional<std::string> weights;
  std::string marginal = "empirical";

  void run() const {
    const auto lopt = load.options();
    ba_dataset* raw = nullptr;
    check(ba_dataset_load(data.c_str(), target.c_str(), &lopt, &raw), "--data " + data);
    DatasetPtr dataset(raw);

    ba_fit_options fopt;
    ba_fit_options_default(&fopt);
    fopt.bins = bins;
    fopt.max_groups = max_groups;
    fopt.strict_groups = strict_groups ? 1 : 0;
    fopt.smoothing = smoothing;
    if (weights) fopt.weights_path = weights->c_str();
    fopt.marginal_mode = marginal == "mixture" ? BA_MARGINAL_MIXTURE : BA_MARGINAL_EMPIRICAL;

    ba_model* m = nullptr;
    check(ba_model_fit(dataset.get(), &fopt, &m), "train");
    ModelPtr model(m);
    check(ba_model_save(model.get(), out.c_str()), "--out " + out);
    std::cerr << "trained on " << ba_dataset_num_rows(dataset.get()) << " rows, "
              << ba_model_num_features(model.get()) << " features, "
              << ba_model_num_classes(model.get()) << " classes -> " << out << "\n";
  }
};

struct ExplainCommand {
  std::string model;
  std::string data;
  std::optional<std::string> out;
  LoadFlags load;
  ExplainFlags flags;
  bool global = false;

  void run() const {
    auto m = load_model(model);
    auto d = load_for_model(m.get(), data, load);
    const auto opts = explain_options(m.get(), flags, flags.method);
    char* raw = nullptr;
    if (global) {
      check(ba_global_report(m.get(), d.get(), &opts, &raw), "global");
    } else {
      check(ba_explain_report(m.get(), d.get(), &opts, &raw), "explain");
    }
    StringPtr doc(raw);
    emit(out, doc.get());
  }
};

struct CompareCommand {
  std::string model;
  std::string data;
  std::optional<std::string> out;
  LoadFlags load;
  ExplainFlags flags;
  std::string a = "shapley";
  std::string b = "woe";

  void run() const {
    auto m = load_model(model);
    auto d = load_for_model(m.get(), data, load);
    const auto oa = explain_options(m.get(), flags, a);
    const auto ob = explain_options(m.get(), flags, b);
    char* raw = nullptr;
    check(ba_compare_report(m.get(), d.get(), &oa, &ob, &raw), "compare");
    StringPtr doc(raw);
    emit(out, doc.get());
  }
};

struct VerifyCommand {
  std::string model;
  std::string data;
  std::optional<std::string> out;
  LoadFlags load;
  std::size_t rows = 20;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  int threads = 0;

  int run() const {
    auto m = load_model(model);
    auto d = load_for_model(m.get(), data, load);
    char* raw = nullptr;
    double deviation = 0;
    const ba_status st = ba_verify(m.get(), d.get(), rows, seed, tol, threads, &deviation, &raw);
    if (st != BA_OK && st != BA_E_VERIFICATION) check(st, "verify");
    StringPtr doc(raw);
    emit(out, doc.get());
    if (st == BA_E_VERIFICATION) {
      std::cerr << "bayes-attrib: verify: max deviation " << deviation << " exceeds --tol " << tol
                << "\n";
      return kExitVerification;
    }
    std::cerr << "verify: max deviation " << deviation << " within --tol " << tol << "\n";
    return kExitOk;
  }
};

struct BenchCommand {
  std::optional<std::string> out;
  std::size_t n = 50000;
  std::vector<std::size_t> dims{10, 20, 40, 80};
  int parts = 5;
  std::vector<std::uint64_t> budgets{25, 50, 100};
  std::size_t sampling_rows = 2;
  std::uint64_t seed = 42;
  int repeats = 3;
  int threads = 1;

  void run() const {
    ba_bench_options o;
    ba_bench_options_default(&o);
    o.n = n;
    o.dims = dims.data();
    o.n_dims = dims.size();
    o.parts = parts;
    o.budgets = budgets.data();
    o.n_budgets = budgets.size();
    o.sampling_rows = sampling_rows;
    o.seed = seed;
    o.repeats = repeats;
    o.threads = threads;
    char* raw = nullptr;
    check(ba_bench(&o, &raw), "bench");
    StringPtr csv(raw);
    emit(out, csv.get());
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted naive Bayes with closed-form Shapley and Weight-of-Evidence attributions",
               "bayes-attrib"};
  app.set_version_flag("--version", std::string(ba_version()));
  app.require_subcommand(1);

  TrainCommand train;
  auto* train_cmd = app.add_subcommand("train", "Fit a model and write it as JSON");
  train_cmd->add_option("--data", train.data, "Training CSV")->required();
  train_cmd->add_option("--target", train.target, "Target column")->required();
  train_cmd->add_option("--out", train.out, "Model file to write")->required();
  add_load_flags(train_cmd, train.load);
  train_cmd->add_option("--bins", train.bins, "Max equal-frequency bins per numeric column")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--max-groups", train.max_groups, "Max value groups per categorical column")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_flag("--strict-groups", train.strict_groups,
                      "No fallback group for categories unseen in training");
  train_cmd->add_option("--smoothing", train.smoothing, "Pseudo-count per part")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  train_cmd->add_option("--weights", train.weights, "CSV of variable,weight rows");
  train_cmd->add_option("--marginal", train.marginal, "Marginal estimator: empirical | mixture")
      ->check(CLI::IsMember({"empirical", "mixture"}))
      ->capture_default_str();

  ExplainCommand explain;
  auto* explain_cmd = app.add_subcommand("explain", "Per-row attributions for every data row");
  ExplainCommand global;
  global.global = true;
  auto* global_cmd = app.add_subcommand("global", "Mean absolute attribution per variable");
  for (auto [cmd, state] : {std::pair{explain_cmd, &explain}, std::pair{global_cmd, &global}}) {
    cmd->add_option("--model", state->model, "Model file")->required();
    cmd->add_option("--data", state->data, "CSV to explain")->required();
    cmd->add_option("--out", state->out, "Report file (default: stdout)");
    add_load_flags(cmd, state->load);
    add_explain_flags(cmd, state->flags, true);
  }

  CompareCommand compare;
  auto* compare_cmd = app.add_subcommand("compare", "Rank agreement between two attribution methods");
  compare_cmd->add_option("--model", compare.model, "Model file")->required();
  compare_cmd->add_option("--data", compare.data, "CSV to explain")->required();
  compare_cmd->add_option("--out", compare.out, "Report file (default: stdout)");
  compare_cmd->add_option("--a", compare.a, "First method")
      ->check(CLI::IsMember(kMethods))
      ->capture_default_str();
  compare_cmd->add_option("--b", compare.b, "Second method")
      ->check(CLI::IsMember(kMethods))
      ->capture_default_str();
  add_load_flags(compare_cmd, compare.load);
  add_explain_flags(compare_cmd, compare.flags, false);

  VerifyCommand verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check closed-form Shapley values against brute force");
  verify_cmd->add_option("--model", verify.model, "Model file")->required();
  verify_cmd->add_option("--data", verify.data, "CSV supplying the rows")->required();
  verify_cmd->add_option("--out", verify.out, "Report file (default: stdout)");
  verify_cmd->add_option("--rows", verify.rows, "Rows checked")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify_cmd->add_option("--tol", verify.tol, "Max tolerated absolute deviation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed, "Row selection seed")->capture_default_str();
  verify_cmd->add_option("--threads", verify.threads, "Worker threads");
  add_load_flags(verify_cmd, verify.load);

  BenchCommand bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time explain-all on synthetic data; CSV output");
  bench_cmd->add_option("--out", bench.out, "CSV file (default: stdout)");
  bench_cmd->add_option("--n", bench.n, "Rows per synthetic dataset")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--dims", bench.dims, "Variable counts")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--parts", bench.parts, "Parts per variable")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  bench_cmd->add_option("--budgets", bench.budgets, "Sampling budgets")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--sampling-rows", bench.sampling_rows, "Rows explained by sampling")
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Generator seed")->capture_default_str();
  bench_cmd->add_option("--repeats", bench.repeats, "Timing repeats (best kept)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--threads", bench.threads, "Worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train_cmd) train.run();
    if (*explain_cmd) explain.run();
    if (*global_cmd) global.run();
    if (*compare_cmd) compare.run();
    if (*verify_cmd) return verify.run();
    if (*bench_cmd) bench.run();
  } catch (const CommandFailure& f) {
    return f.code;
  }
  return kExitOk;
}
