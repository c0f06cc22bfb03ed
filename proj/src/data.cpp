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

#include "bayes_attrib/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_map>

#include "bayes_attrib/error.hpp"

namespace bayes_attrib {
namespace {

bool is_marker(const std::string& cell, const std::vector<std::string>& markers) {
  return std::find(markers.begin(), markers.end(), cell) != markers.end();
}

std::string trim_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

struct CsvFile {
  std::vector<std::string> header;
  // (line number, cells)
  std::vector<std::pair<std::size_t, std::vector<std::string>>> records;
};

CsvFile read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  CsvFile file;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim_cr(std::move(line));
    if (!have_header) {
      if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
        line.erase(0, 3);
      }
      if (line.empty()) fail(ErrorKind::kFormat, path.string() + ": empty header line");
      file.header = split_csv_record(line);
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    auto cells = split_csv_record(line);
    if (cells.size() != file.header.size()) {
      fail(ErrorKind::kFormat, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                   std::to_string(file.header.size()) + " fields, found " +
                                   std::to_string(cells.size()));
    }
    file.records.emplace_back(line_no, std::move(cells));
  }
  if (!have_header) fail(ErrorKind::kFormat, path.string() + ": empty file");
  return file;
}

std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                       const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

bool selected(const std::string& name, const CsvOptions& options) {
  const auto& keep = options.feature_columns;
  const auto& drop = options.ignore_columns;
  if (!keep.empty() && std::find(keep.begin(), keep.end(), name) == keep.end()) return false;
  return std::find(drop.begin(), drop.end(), name) == drop.end();
}

std::string quote_if_needed(const std::string& cell) {
  if (cell.find_first_of(",\"") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::optional<std::size_t> Schema::feature_index(const std::string& name) const {
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Schema::class_index(const std::string& label) const {
  auto it = std::find(class_labels.begin(), class_labels.end(), label);
  if (it == class_labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - class_labels.begin());
}

void Schema::validate() const {
  if (target.empty()) fail(ErrorKind::kInvalidArgument, "schema: empty target name");
  std::set<std::string> names;
  for (const auto& c : features) {
    if (c.name.empty()) fail(ErrorKind::kInvalidArgument, "schema: empty column name");
    if (c.name == target) {
      fail(ErrorKind::kInvalidArgument, "schema: target '" + target + "' listed as a feature");
    }
    if (!names.insert(c.name).second) {
      fail(ErrorKind::kInvalidArgument, "schema: duplicate column '" + c.name + "'");
    }
  }
  if (class_labels.size() < 2) {
    fail(ErrorKind::kInvalidArgument,
         "schema: target '" + target + "' needs at least 2 classes, found " +
             std::to_string(class_labels.size()));
  }
  std::set<std::string> labels(class_labels.begin(), class_labels.end());
  if (labels.size() != class_labels.size()) {
    fail(ErrorKind::kInvalidArgument, "schema: duplicate class label");
  }
}

std::vector<std::string> parse_marker_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> split_csv_record(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::optional<double> parse_number(const std::string& text) {
  std::size_t b = 0, e = text.size();
  while (b < e && (text[b] == ' ' || text[b] == '\t')) ++b;
  while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t')) --e;
  if (b == e) return std::nullopt;
  const char* first = text.data() + b;
  if (*first == '+') ++first;
  double v = 0;
  auto res = std::from_chars(first, text.data() + e, v, std::chars_format::general);
  if (res.ec != std::errc() || res.ptr != text.data() + e || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

Schema infer_schema(const std::filesystem::path& path, const std::string& target,
                    const CsvOptions& options) {
  CsvFile file = read_csv(path);
  if (file.records.empty()) fail(ErrorKind::kFormat, path.string() + ": no data rows");
  auto target_col = find_column(file.header, target);
  if (!target_col) {
    fail(ErrorKind::kInvalidArgument,
         path.string() + ": unknown target column '" + target + "'");
  }
  for (const auto& name : options.feature_columns) {
    if (!find_column(file.header, name) || name == target) {
      fail(ErrorKind::kInvalidArgument, path.string() + ": unknown feature column '" + name + "'");
    }
  }

  Schema schema;
  schema.target = target;
  for (std::size_t c = 0; c < file.header.size(); ++c) {
    if (c == *target_col || !selected(file.header[c], options)) continue;
    bool numeric = true;
    for (const auto& [line_no, cells] : file.records) {
      const auto& cell = cells[c];
      if (is_marker(cell, options.missing_markers)) continue;
      if (!parse_number(cell)) {
        numeric = false;
        break;
      }
    }
    schema.features.push_back(
        {file.header[c], numeric ? ColumnKind::kNumeric : ColumnKind::kCategorical});
  }
  for (const auto& [line_no, cells] : file.records) {
    const auto& label = cells[*target_col];
    if (is_marker(label, options.missing_markers)) continue;
    if (std::find(schema.class_labels.begin(), schema.class_labels.end(), label) ==
        schema.class_labels.end()) {
      schema.class_labels.push_back(label);
    }
  }
  if (schema.class_labels.size() < 2) {
    fail(ErrorKind::kInvalidArgument, path.string() + ": target column '" + target +
                                          "' has a single distinct value");
  }
  schema.validate();
  return schema;
}

Dataset load_csv(const std::filesystem::path& path, const Schema& schema,
                 const CsvOptions& options, bool require_target) {
  CsvFile file = read_csv(path);
  std::vector<std::size_t> cols;
  for (const auto& f : schema.features) {
    auto c = find_column(file.header, f.name);
    if (!c) fail(ErrorKind::kFormat, path.string() + ": missing column '" + f.name + "'");
    cols.push_back(*c);
  }
  auto target_col = find_column(file.header, schema.target);
  if (!target_col && require_target) {
    fail(ErrorKind::kFormat, path.string() + ": missing target column '" + schema.target + "'");
  }

  Dataset ds;
  ds.schema = schema;
  ds.rows.reserve(file.records.size());
  for (const auto& [line_no, cells] : file.records) {
    Instance inst;
    inst.values.reserve(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const auto& cell = cells[cols[i]];
      if (is_marker(cell, options.missing_markers)) {
        inst.values.emplace_back(Missing{});
      } else if (schema.features[i].kind == ColumnKind::kNumeric) {
        auto v = parse_number(cell);
        if (!v) {
          fail(ErrorKind::kFormat, path.string() + ":" + std::to_string(line_no) +
                                       ": column '" + schema.features[i].name +
                                       "': cannot parse '" + cell + "' as a number");
        }
        inst.values.emplace_back(*v);
      } else {
        inst.values.emplace_back(cell);
      }
    }
    if (target_col) {
      const auto& label = cells[*target_col];
      auto k = schema.class_index(label);
      if (!k) {
        fail(ErrorKind::kFormat, path.string() + ":" + std::to_string(line_no) +
                                     ": unknown class label '" + label + "'");
      }
      ds.labels.push_back(static_cast<int>(*k));
    }
    ds.rows.push_back(std::move(inst));
  }
  return ds;
}

void write_csv(const Dataset& dataset, const std::filesystem::path& path,
               const CsvOptions& options) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  const std::string missing =
      options.missing_markers.empty() ? std::string() : options.missing_markers.front();
  const auto& schema = dataset.schema;
  for (std::size_t i = 0; i < schema.features.size(); ++i) {
    if (i) out << ',';
    out << quote_if_needed(schema.features[i].name);
  }
  if (dataset.labeled()) out << ',' << quote_if_needed(schema.target);
  out << '\n';
  for (std::size_t r = 0; r < dataset.rows.size(); ++r) {
    const auto& values = dataset.rows[r].values;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out << ',';
      if (is_missing(values[i])) {
        out << quote_if_needed(missing);
      } else if (const double* d = std::get_if<double>(&values[i])) {
        out << format_number(*d);
      } else {
        out << quote_if_needed(std::get<std::string>(values[i]));
      }
    }
    if (dataset.labeled()) {
      out << ',' << quote_if_needed(schema.class_labels[dataset.labels[r]]);
    }
    out << '\n';
  }
  if (!out) fail(ErrorKind::kIo, "write failed for '" + path.string() + "'");
}

}  // namespace bayes_attrib
