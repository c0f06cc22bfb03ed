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
#include <string>
#include <variant>
#include <vector>

namespace bayes_attrib {

enum class ColumnKind { kNumeric, kCategorical };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;

  bool operator==(const Column&) const = default;
};

// Feature columns in file order plus the target. The target is kept out of
// `features`; it is always categorical.
struct Schema {
  std::vector<Column> features;
  std::string target;
  std::vector<std::string> class_labels;

  std::size_t num_features() const { return features.size(); }
  std::size_t num_classes() const { return class_labels.size(); }
  std::optional<std::size_t> feature_index(const std::string& name) const;
  std::optional<std::size_t> class_index(const std::string& label) const;

  // Throws kInvalidArgument on duplicate/empty names, K < 2, or a target that
  // also appears as a feature.
  void validate() const;

  bool operator==(const Schema&) const = default;
};

struct Missing {
  bool operator==(const Missing&) const = default;
};

using Value = std::variant<Missing, double, std::string>;

inline bool is_missing(const Value& v) { return std::holds_alternative<Missing>(v); }

// One slot per feature column, in schema order.
struct Instance {
  std::vector<Value> values;
};

struct Dataset {
  Schema schema;
  std::vector<Instance> rows;
  // Class index per row; empty when the data was loaded without a target.
  std::vector<int> labels;

  std::size_t size() const { return rows.size(); }
  bool labeled() const { return !labels.empty(); }
};

struct CsvOptions {
  std::vector<std::string> missing_markers{"", "?"};
  // When non-empty, only these columns become features (in file order).
  std::vector<std::string> feature_columns;
  // Columns dropped from the feature set.
  std::vector<std::string> ignore_columns;
};

// Parses a comma-separated list such as "?,NA," into markers. A trailing or
// doubled comma contributes the empty marker.
std::vector<std::string> parse_marker_list(const std::string& text);

// Splits one CSV record. Double quotes delimit fields that may contain commas;
// a doubled quote inside a quoted field is a literal quote.
std::vector<std::string> split_csv_record(const std::string& line);

// Strictly parses a finite decimal number; no trailing garbage.
std::optional<double> parse_number(const std::string& text);

Schema infer_schema(const std::filesystem::path& path, const std::string& target,
                    const CsvOptions& options = {});

// Loads rows against a known schema. Columns are matched by header name; extra
// header columns are ignored. When `require_target` is false a file without
// the target column loads as unlabeled data.
Dataset load_csv(const std::filesystem::path& path, const Schema& schema,
                 const CsvOptions& options = {}, bool require_target = true);

// Writes features then target (when labeled). Missing values are written as
// the first configured marker.
void write_csv(const Dataset& dataset, const std::filesystem::path& path,
               const CsvOptions& options = {});

}  // namespace bayes_attrib
