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


// Comparing attribution methods: global impacts, per-feature MAE/RMSE,
// modified Cayley distance between top-n rankings, and the Boolean-hypercube
// check that monotone functions get weight-independent global impacts.

#ifndef TREEATTR_ANALYSIS_H_
#define TREEATTR_ANALYSIS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "treeattr/attribution.h"
#include "treeattr/pathdep.h"

namespace treeattr {

// One attribution per data point, all from the same method.
struct AttributionTable {
  std::string method;
  int num_features = 0;
  std::vector<Attribution> rows;
};

// Rectangular, every row of length num_features.
absl::Status ValidateTable(const AttributionTable& table);

// Gamma_i = sum over rows of |value_i|, divided by the row count if `mean`.
absl::StatusOr<std::vector<double>> GlobalImpact(const AttributionTable& table,
                                                 bool mean = false);

struct ErrorMetrics {
  std::vector<double> mae;
  std::vector<double> rmse;
};

// Per feature over rows: mean |a - b| and sqrt(mean (a - b)^2).
absl::StatusOr<ErrorMetrics> CompareTables(const AttributionTable& a,
                                           const AttributionTable& b);

// Feature indices by |value| descending, ties by ascending index.
std::vector<int> RankFeatures(std::span<const double> values);

// Transposition distance between the top_n rankings of a and b. Features in
// one list but not the other are appended to it in the other list's order,
// so both lists become orderings of the same set; the result is the set size
// minus the number of cycles of the permutation taking one to the other.
absl::StatusOr<int> ModifiedCayley(std::span<const double> a,
                                   std::span<const double> b, int top_n);

// ModifiedCayley averaged over the rows of two tables of equal shape.
absl::StatusOr<double> MeanModifiedCayley(const AttributionTable& a,
                                          const AttributionTable& b,
                                          int top_n);

inline constexpr int kMaxHypercubeDim = 16;
inline constexpr int kMaxBruteForceDim = 12;

// f over {0,1}^k; bit i of the table index is x_i.
struct HypercubeFunction {
  int k = 0;
  std::vector<double> table;
};

absl::Status ValidateHypercube(const HypercubeFunction& f);

// Omega_i = sum_x |omega_i(x)| where omega_i(x) is the weighted marginal
// contribution of i under g_x(S) = mean of f over the points agreeing with x
// on S. OutOfRange for k > kMaxBruteForceDim.
absl::StatusOr<std::vector<double>> HypercubeImpacts(
    const HypercubeFunction& f, const WeightScheme& scheme);

// Same with a weight per subset: weights[i][mask] for every mask without
// bit i. Each weights[i] must be non-negative and sum to 1 over those masks.
absl::StatusOr<std::vector<double>> HypercubeImpactsPerSubset(
    const HypercubeFunction& f, std::span<const std::vector<double>> weights);

// 1/2 * sum_x |f(x) - f(x with bit i flipped)|.
std::vector<double> FlipImpacts(const HypercubeFunction& f);

// Feature i is monotone when f(x) - f(x with bit i cleared) over all x with
// x_i = 1 never takes both signs. Zeros are compatible with either sign.
std::vector<bool> IsMonotone(const HypercubeFunction& f);

}  // namespace treeattr

#endif  // TREEATTR_ANALYSIS_H_
