/*
 * Copyright 2026 The treeattr Authors.
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


#include "treeattr/io.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"

// The absl in use has its own string_view, so splitting is done here.
namespace treeattr {
namespace {

std::vector<std::string_view> Split(std::string_view text, char separator) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(separator, start);
    if (end == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, end - start));
    start = end + 1;
  }
}

std::string_view Strip(std::string_view text) {
  const char* kSpace = " \t\r";
  const std::size_t first = text.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  return text.substr(first, text.find_last_not_of(kSpace) - first + 1);
}

// Non-blank lines with any trailing '\r' removed.
std::vector<std::string_view> Lines(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::string_view line : Split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!Strip(line).empty()) lines.push_back(line);
  }
  return lines;
}

absl::StatusOr<double> ParseDouble(std::string_view field, int line,
                                   int column) {
  field = Strip(field);
  double value = 0;
  const auto [end, error] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || error != std::errc() ||
      end != field.data() + field.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "line ", line, " column ", column, ": not a number: '",
        std::string(field), "'"));
  }
  return value;
}

absl::Status CheckHeader(std::string_view line,
                         std::span<const std::string> expected) {
  std::vector<std::string_view> fields = Split(line, ',');
  bool ok = fields.size() == expected.size();
  for (std::size_t i = 0; ok && i < fields.size(); ++i) {
    ok = Strip(fields[i]) == expected[i];
  }
  if (!ok) {
    return absl::InvalidArgumentError(absl::StrCat(
        "unexpected header '", std::string(line), "'"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream contents;
  contents << in.rdbuf();
  return contents.str();
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot write ", path));
  }
  out << contents;
  if (!out.flush()) {
    return absl::DataLossError(absl::StrCat("write to ", path, " failed"));
  }
  return absl::OkStatus();
}

std::string FormatDouble(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

absl::StatusOr<Dataset> ParseDatasetCsv(std::string_view text) {
  const std::vector<std::string_view> lines = Lines(text);
  if (lines.empty()) return absl::InvalidArgumentError("dataset has no header");
  Dataset dataset;
  const std::vector<std::string_view> header = Split(lines[0], ',');
  std::vector<std::string> expected;
  for (std::size_t i = 0; i < header.size(); ++i) {
    expected.push_back(absl::StrCat("f", i));
  }
  if (absl::Status s = CheckHeader(lines[0], expected); !s.ok()) return s;
  dataset.num_features = static_cast<int>(header.size());

  for (std::size_t l = 1; l < lines.size(); ++l) {
    const std::vector<std::string_view> fields = Split(lines[l], ',');
    if (static_cast<int>(fields.size()) != dataset.num_features) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", l + 1, ": ", fields.size(), " fields, header has ",
                       dataset.num_features));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      auto value = ParseDouble(fields[c], l + 1, c + 1);
      if (!value.ok()) return value.status();
      row.push_back(*value);
    }
    dataset.rows.push_back(std::move(row));
  }
  return dataset;
}

absl::StatusOr<Dataset> LoadDataset(const std::string& path) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  auto dataset = ParseDatasetCsv(*text);
  if (!dataset.ok()) {
    return absl::Status(dataset.status().code(),
                        absl::StrCat(path, ": ", dataset.status().message()));
  }
  return dataset;
}

std::string DatasetToCsv(const Dataset& dataset) {
  std::string out;
  for (int i = 0; i < dataset.num_features; ++i) {
    absl::StrAppend(&out, i == 0 ? "" : ",", "f", i);
  }
  out += '\n';
  for (const auto& row : dataset.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      absl::StrAppend(&out, i == 0 ? "" : ",", FormatDouble(row[i]));
    }
    out += '\n';
  }
  return out;
}

std::string AttributionCsv(std::span<const Attribution> rows,
                           int num_features) {
  std::string out = "row,expected_value";
  for (int i = 0; i < num_features; ++i) absl::StrAppend(&out, ",phi_", i);
  out += '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    absl::StrAppend(&out, r, ",", FormatDouble(rows[r].expected_value));
    for (const double value : rows[r].values) {
      absl::StrAppend(&out, ",", FormatDouble(value));
    }
    out += '\n';
  }
  return out;
}

absl::StatusOr<AttributionTable> ParseAttributionCsv(std::string_view text,
                                                     std::string method) {
  const std::vector<std::string_view> lines = Lines(text);
  if (lines.empty()) {
    return absl::InvalidArgumentError("attribution CSV has no header");
  }
  const std::vector<std::string_view> header = Split(lines[0], ',');
  if (header.size() < 2) {
    return absl::InvalidArgumentError("attribution CSV header too short");
  }
  std::vector<std::string> expected = {"row", "expected_value"};
  for (std::size_t i = 0; i + 2 < header.size(); ++i) {
    expected.push_back(absl::StrCat("phi_", i));
  }
  if (absl::Status s = CheckHeader(lines[0], expected); !s.ok()) return s;

  AttributionTable table;
  table.method = std::move(method);
  table.num_features = static_cast<int>(header.size()) - 2;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const std::vector<std::string_view> fields = Split(lines[l], ',');
    if (fields.size() != header.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", l + 1, ": ", fields.size(),
                       " fields, header has ", header.size()));
    }
    auto index = ParseDouble(fields[0], l + 1, 1);
    if (!index.ok()) return index.status();
    if (*index != static_cast<double>(l - 1)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", l + 1, ": row index ", std::string(fields[0]),
          ", expected ", l - 1));
    }
    Attribution row;
    auto expected_value = ParseDouble(fields[1], l + 1, 2);
    if (!expected_value.ok()) return expected_value.status();
    row.expected_value = *expected_value;
    for (std::size_t c = 2; c < fields.size(); ++c) {
      auto value = ParseDouble(fields[c], l + 1, c + 1);
      if (!value.ok()) return value.status();
      row.values.push_back(*value);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace treeattr
