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

#include "bayes_attrib/preprocess.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "bayes_attrib/error.hpp"

namespace bayes_attrib {
namespace {

std::vector<double> equal_frequency_cuts(std::vector<double> values, int max_bins) {
  std::vector<double> cuts;
  if (values.empty() || max_bins <= 1) return cuts;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  for (int j = 1; j < max_bins; ++j) {
    std::size_t idx = static_cast<std::size_t>(j) * n / static_cast<std::size_t>(max_bins);
    if (idx == 0 || idx >= n) continue;
    // A tied block straddling the quantile moves the boundary above the block.
    const double lo = values[idx - 1];
    auto hi_it = std::upper_bound(values.begin() + static_cast<std::ptrdiff_t>(idx - 1),
                                  values.end(), lo);
    if (hi_it == values.end()) continue;
    const double hi = *hi_it;
    double cut = lo + (hi - lo) / 2;
    if (!(cut > lo)) cut = hi;
    if (cuts.empty() || cut > cuts.back()) cuts.push_back(cut);
  }
  return cuts;
}

VariablePartition fit_numeric(const std::string& name, const std::vector<Value>& column,
                              int max_bins) {
  VariablePartition p;
  p.variable = name;
  p.kind = PartitionKind::kIntervals;
  std::vector<double> values;
  bool has_missing = false;
  for (const auto& v : column) {
    if (is_missing(v)) {
      has_missing = true;
    } else {
      values.push_back(std::get<double>(v));
    }
  }
  p.cuts = equal_frequency_cuts(std::move(values), max_bins);
  p.part_count = static_cast<int>(p.cuts.size()) + 1;
  if (has_missing) p.missing_part = p.part_count++;
  return p;
}

VariablePartition fit_categorical(const std::string& name, const std::vector<Value>& column,
                                  const PreprocessOptions& options) {
  VariablePartition p;
  p.variable = name;
  p.kind = PartitionKind::kGroups;

  struct Tally {
    std::string value;
    std::size_t count = 0;
    std::size_t first_seen = 0;
  };
  std::unordered_map<std::string, std::size_t> slot;
  std::vector<Tally> tallies;
  bool has_missing = false;
  for (std::size_t r = 0; r < column.size(); ++r) {
    if (is_missing(column[r])) {
      has_missing = true;
      continue;
    }
    const auto& s = std::get<std::string>(column[r]);
    auto [it, inserted] = slot.emplace(s, tallies.size());
    if (inserted) tallies.push_back({s, 0, r});
    ++tallies[it->second].count;
  }
  std::stable_sort(tallies.begin(), tallies.end(), [](const Tally& a, const Tally& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.first_seen < b.first_seen;
  });

  const std::size_t distinct = tallies.size();
  const auto max_groups = static_cast<std::size_t>(options.max_groups);
  const bool all_singletons = options.strict_groups ? distinct <= max_groups
                                                    : distinct < max_groups;
  const std::size_t singletons = all_singletons ? distinct : max_groups - 1;
  for (std::size_t g = 0; g < singletons; ++g) {
    p.groups.emplace(tallies[g].value, static_cast<PartIndex>(g));
  }
  p.part_count = static_cast<int>(singletons);
  if (!(all_singletons && options.strict_groups)) {
    p.fallback_group = p.part_count++;
    for (std::size_t g = singletons; g < distinct; ++g) {
      p.groups.emplace(tallies[g].value, *p.fallback_group);
    }
  }
  if (has_missing) p.missing_part = p.part_count++;
  if (p.part_count == 0) p.part_count = 1;  // strict, empty column, no missing
  return p;
}

}  // namespace

PartIndex VariablePartition::encode(const Value& value) const {
  if (is_missing(value)) {
    if (!missing_part) {
      fail(ErrorKind::kInvalidArgument,
           "variable '" + variable + "': missing value but no missing part was fitted");
    }
    return *missing_part;
  }
  if (kind == PartitionKind::kIntervals) {
    const double* v = std::get_if<double>(&value);
    if (!v) fail(ErrorKind::kInvalidArgument, "variable '" + variable + "': expected a number");
    return static_cast<PartIndex>(std::upper_bound(cuts.begin(), cuts.end(), *v) - cuts.begin());
  }
  const std::string* s = std::get_if<std::string>(&value);
  if (!s) fail(ErrorKind::kInvalidArgument, "variable '" + variable + "': expected a category");
  auto it = groups.find(*s);
  if (it != groups.end()) return it->second;
  if (!fallback_group) {
    fail(ErrorKind::kInvalidArgument,
         "variable '" + variable + "': unseen category '" + *s + "' and no fallback group");
  }
  return *fallback_group;
}

void VariablePartition::validate() const {
  auto bad = [&](const std::string& what) {
    fail(ErrorKind::kFormat, "partition '" + variable + "': " + what);
  };
  if (part_count < 1) bad("part count must be >= 1");
  if (missing_part && *missing_part != part_count - 1) bad("missing part must be the last index");
  const int regular = part_count - (missing_part ? 1 : 0);
  if (kind == PartitionKind::kIntervals) {
    for (std::size_t i = 1; i < cuts.size(); ++i) {
      if (!(cuts[i - 1] < cuts[i])) bad("cut points not strictly ascending");
    }
    if (static_cast<int>(cuts.size()) + 1 != regular) bad("part count does not match cuts");
  } else {
    for (const auto& [cat, idx] : groups) {
      if (idx < 0 || idx >= regular) bad("group index out of range for '" + cat + "'");
    }
    if (fallback_group && (*fallback_group < 0 || *fallback_group >= regular)) {
      bad("fallback group out of range");
    }
  }
}

std::vector<int> Preprocessor::part_counts() const {
  std::vector<int> out;
  out.reserve(partitions.size());
  for (const auto& p : partitions) out.push_back(p.part_count);
  return out;
}

int Preprocessor::total_parts() const {
  int total = 0;
  for (const auto& p : partitions) total += p.part_count;
  return total;
}

Preprocessor fit_partitions(const Dataset& dataset, const PreprocessOptions& options) {
  if (options.max_bins < 1) fail(ErrorKind::kInvalidArgument, "--bins must be >= 1");
  if (options.max_groups < 1) fail(ErrorKind::kInvalidArgument, "--max-groups must be >= 1");
  if (dataset.size() == 0) fail(ErrorKind::kInvalidArgument, "cannot fit partitions on an empty dataset");
  Preprocessor prep;
  const auto& features = dataset.schema.features;
  std::vector<Value> column(dataset.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    for (std::size_t r = 0; r < dataset.size(); ++r) column[r] = dataset.rows[r].values[i];
    prep.partitions.push_back(features[i].kind == ColumnKind::kNumeric
                                  ? fit_numeric(features[i].name, column, options.max_bins)
                                  : fit_categorical(features[i].name, column, options));
  }
  return prep;
}

PartVector encode_instance(const Preprocessor& prep, const Instance& instance) {
  if (instance.values.size() != prep.partitions.size()) {
    fail(ErrorKind::kInvalidArgument, "instance has " + std::to_string(instance.values.size()) +
                                          " values, model expects " +
                                          std::to_string(prep.partitions.size()));
  }
  PartVector parts(instance.values.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    parts[i] = prep.partitions[i].encode(instance.values[i]);
  }
  return parts;
}

PartDataset encode(const Preprocessor& prep, const Dataset& dataset) {
  if (dataset.schema.features.size() != prep.partitions.size()) {
    fail(ErrorKind::kInvalidArgument, "dataset schema does not match the preprocessor");
  }
  for (std::size_t i = 0; i < prep.partitions.size(); ++i) {
    if (dataset.schema.features[i].name != prep.partitions[i].variable) {
      fail(ErrorKind::kInvalidArgument,
           "dataset column '" + dataset.schema.features[i].name + "' does not match partition '" +
               prep.partitions[i].variable + "'");
    }
  }
  PartDataset out;
  out.schema = dataset.schema;
  out.labels = dataset.labels;
  out.part_rows.reserve(dataset.size());
  for (std::size_t r = 0; r < dataset.size(); ++r) {
    try {
      out.part_rows.push_back(encode_instance(prep, dataset.rows[r]));
    } catch (const Error& e) {
      fail(e.kind(), "row " + std::to_string(r) + ": " + e.what());
    }
  }
  return out;
}

Preprocessor make_index_preprocessor(std::span<const int> part_counts) {
  Preprocessor prep;
  for (std::size_t i = 0; i < part_counts.size(); ++i) {
    VariablePartition p;
    p.variable = "x" + std::to_string(i);
    p.kind = PartitionKind::kIntervals;
    for (int k = 1; k < part_counts[i]; ++k) p.cuts.push_back(k - 0.5);
    p.part_count = part_counts[i];
    prep.partitions.push_back(std::move(p));
  }
  return prep;
}

Schema make_index_schema(std::size_t num_features, std::size_t num_classes) {
  Schema s;
  s.target = "class";
  for (std::size_t i = 0; i < num_features; ++i) {
    s.features.push_back({"x" + std::to_string(i), ColumnKind::kNumeric});
  }
  for (std::size_t k = 0; k < num_classes; ++k) s.class_labels.push_back("c" + std::to_string(k));
  return s;
}

}  // namespace bayes_attrib
