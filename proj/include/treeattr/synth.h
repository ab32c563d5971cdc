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

// Model generators: the two single-tree instances with a known exact answer
// (used for the numerical-error experiment) and random ensembles for
// property tests.

#ifndef TREEATTR_SYNTH_H_
#define TREEATTR_SYNTH_H_

#include <random>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "treeattr/attribution.h"
#include "treeattr/model.h"

namespace treeattr {

enum class SyntheticKind { kDense, kSparse };

inline constexpr int kMaxDenseDepth = 24;
inline constexpr int kMaxSparseDepth = 200;

struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::kSparse;
  // Number of features and depth of the tree.
  int d = 1;
};

struct SyntheticInstance {
  TreeEnsemble model;
  std::vector<double> x;
  // Exact attribution, identical for Shapley and Banzhaf: 777/2 on the root
  // feature (index d-1) and 0 elsewhere.
  ExactAttribution exact;
};

// One tree with d features and the point x = (1, ..., 1). The root splits
// on feature d-1; a node at depth i splits on feature d-1-i at threshold 1.
// Below the root sit two subtrees of depth d-1 with the same shape whose
// leaves hold 0 (left) and 777 (right); every leaf has coverage 33.
//
//   dense:  both subtrees are full binary trees (2^d leaves in total).
//   sparse: both subtrees are caterpillars whose inner nodes have a leaf as
//           left child (2d leaves in total).
absl::StatusOr<SyntheticInstance> GenerateSynthetic(const SyntheticSpec& spec);

std::string_view SyntheticKindName(SyntheticKind kind);

struct ErrorCurvePoint {
  int depth = 0;
  Method method = Method::kShapleyBasic;
  double max_abs_error = 0;
};

// Runs each float64 algorithm on the instance of every depth and reports
// max_i |computed_i - exact_i|. Oracle methods are rejected.
absl::StatusOr<std::vector<ErrorCurvePoint>> ErrorCurve(
    SyntheticKind kind, std::span<const int> depths,
    std::span<const Method> methods);

// "depth,method,max_abs_error" with 17 significant digits.
std::string ErrorCurveCsv(std::span<const ErrorCurvePoint> points);

struct RandomEnsembleOptions {
  int min_trees = 1;
  int max_trees = 5;
  int max_leaves = 32;
  int max_depth = 12;
  // Features that splits may use.
  int relevant_features = 10;
  // Extra trailing features no split uses.
  int dead_features = 0;
  // Thresholds are drawn from {0, 1, ..., threshold_levels - 1}.
  int threshold_levels = 8;
  int max_leaf_coverage = 20;
  bool integer_coverages = true;
};

// Random valid ensemble. Trees are built by recursively splitting a uniform
// random leaf budget, so shapes range from balanced to caterpillar.
TreeEnsemble RandomEnsemble(const RandomEnsembleOptions& options,
                            std::mt19937_64& rng);

// Point whose coordinates often coincide with split thresholds.
std::vector<double> RandomPoint(int num_features, int threshold_levels,
                                std::mt19937_64& rng);

}  // namespace treeattr

#endif  // TREEATTR_SYNTH_H_
