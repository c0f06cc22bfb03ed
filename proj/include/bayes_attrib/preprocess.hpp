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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bayes_attrib/data.hpp"

namespace bayes_attrib {

using PartIndex = int;
using PartVector = std::vector<PartIndex>;

enum class PartitionKind { kIntervals, kGroups };

// Discretization of one feature. Interval parts come first (0..|cuts|), or
// group parts (singletons, then the fallback pool); the missing part, when
// present, is always the last index.
struct VariablePartition {
  std::string variable;
  PartitionKind kind = PartitionKind::kIntervals;
  std::vector<double> cuts;                     // intervals: strictly ascending
  std::map<std::string, PartIndex> groups;      // groups: category -> part
  std::optional<PartIndex> fallback_group;      // groups: unseen categories land here
  std::optional<PartIndex> missing_part;
  int part_count = 1;

  PartIndex encode(const Value& value) const;
  void validate() const;

  bool operator==(const VariablePartition&) const = default;
};

struct Preprocessor {
  std::vector<VariablePartition> partitions;

  std::size_t num_features() const { return partitions.size(); }
  std::vector<int> part_counts() const;
  int total_parts() const;

  bool operator==(const Preprocessor&) const = default;
};

struct PartDataset {
  Schema schema;
  std::vector<PartVector> part_rows;
  std::vector<int> labels;

  std::size_t size() const { return part_rows.size(); }
};

struct PreprocessOptions {
  int max_bins = 10;
  int max_groups = 10;
  // Strict grouping creates no empty fallback group: unseen categories are
  // rejected at encode time unless pooling was needed anyway.
  bool strict_groups = false;
};

Preprocessor fit_partitions(const Dataset& dataset, const PreprocessOptions& options = {});

PartDataset encode(const Preprocessor& prep, const Dataset& dataset);

PartVector encode_instance(const Preprocessor& prep, const Instance& instance);

// Numeric variables whose value k maps to part k, for tables built directly
// in part space (synthetic models, benchmarks).
Preprocessor make_index_preprocessor(std::span<const int> part_counts);

// Schema whose features are "x0".."x{d-1}" and classes "c0".."c{K-1}".
Schema make_index_schema(std::size_t num_features, std::size_t num_classes);

}  // namespace bayes_attrib
