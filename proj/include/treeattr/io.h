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


// Text formats: the dataset CSV ("f0,...,f{n-1}" header, one point per row)
// and the attribution CSV ("row,expected_value,phi_0,...,phi_{n-1}").
// Floats are written with 17 significant digits so they read back exactly.

#ifndef TREEATTR_IO_H_
#define TREEATTR_IO_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "treeattr/analysis.h"
#include "treeattr/attribution.h"

namespace treeattr {

struct Dataset {
  int num_features = 0;
  std::vector<std::vector<double>> rows;
};

// NotFound naming the path when it cannot be opened.
absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view contents);

std::string FormatDouble(double value);

absl::StatusOr<Dataset> ParseDatasetCsv(std::string_view text);
absl::StatusOr<Dataset> LoadDataset(const std::string& path);
std::string DatasetToCsv(const Dataset& dataset);

std::string AttributionCsv(std::span<const Attribution> rows,
                           int num_features);
// Rows must be numbered 0, 1, ... in order. `method` labels the table.
absl::StatusOr<AttributionTable> ParseAttributionCsv(std::string_view text,
                                                     std::string method);

}  // namespace treeattr

#endif  // TREEATTR_IO_H_
