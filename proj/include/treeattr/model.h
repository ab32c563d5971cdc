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

// Binary tree-ensemble models: in-memory representation, JSON loading with
// full validation, and prediction.
//
// Model JSON (format_version 1):
//
//   {"format_version": 1, "num_features": n, "aggregation": "average",
//    "trees": [{"nodes": [
//        {"kind": "split", "feature": 0, "threshold": 5.0,
//         "left": 1, "right": 2, "coverage": 4.0},
//        {"kind": "leaf", "value": 10.0, "coverage": 3.0},
//        {"kind": "leaf", "value": 20.0, "coverage": 1.0}]}]}
//
// Node indices are positions in the array and the root is node 0. A split
// sends x to the left child iff x[feature] < threshold.

#ifndef TREEATTR_MODEL_H_
#define TREEATTR_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "treeattr/rational.h"

namespace treeattr {

enum class NodeKind : std::uint8_t { kSplit, kLeaf };

enum class Side : std::uint8_t { kLeft, kRight };

struct TreeNode {
  NodeKind kind = NodeKind::kLeaf;
  // Split nodes only.
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  // Leaf nodes only.
  double value = 0.0;
  // Number (or weight) of training points reaching this node.
  double coverage = 1.0;

  bool is_leaf() const { return kind == NodeKind::kLeaf; }
  int child(Side side) const { return side == Side::kLeft ? left : right; }

  static TreeNode Split(int feature, double threshold, int left, int right,
                        double coverage);
  static TreeNode Leaf(double value, double coverage);
};

struct Tree {
  std::vector<TreeNode> nodes;

  const TreeNode& root() const { return nodes.front(); }
  // Number of edges on the longest root-leaf path.
  int Depth() const;
  int NumLeaves() const;
};

enum class Aggregation : std::uint8_t { kAverage, kSum };

struct TreeEnsemble {
  std::vector<Tree> trees;
  int num_features = 0;
  Aggregation aggregation = Aggregation::kAverage;

  int MaxDepth() const;
  int TotalLeaves() const;
  // Multiplier applied to the per-tree sum: 1/T for averaging, 1 for sums.
  template <typename Real>
  Real TreeWeight() const {
    if (aggregation == Aggregation::kSum) return Real(1);
    return Real(1) / Real(static_cast<long>(trees.size()));
  }
};

// Checks every structural invariant: positive coverages, coverage
// consistency (r_v == r_left + r_right up to 1e-9 relative), feature indices
// in range, and that child links form a tree rooted at node 0.
absl::Status ValidateModel(const TreeEnsemble& model);

absl::StatusOr<TreeEnsemble> ParseModelJson(std::string_view json);
absl::StatusOr<TreeEnsemble> LoadModel(const std::string& path);
std::string ModelToJson(const TreeEnsemble& model);

// True when every coverage is an integer; required for exact execution.
bool HasIntegerCoverages(const TreeEnsemble& model);

// Returns InvalidArgument when `x` does not have num_features entries.
absl::Status CheckFeatureVector(const TreeEnsemble& model,
                                std::span<const double> x);

double PredictTree(const Tree& tree, std::span<const double> x);
double Predict(const TreeEnsemble& model, std::span<const double> x);

// Coverage-weighted mean of the leaf values, aggregated over trees. This is
// the expectation of the model output when no feature is fixed.
template <typename Real>
Real ExpectedValue(const TreeEnsemble& model);

extern template double ExpectedValue<double>(const TreeEnsemble&);
extern template Rational ExpectedValue<Rational>(const TreeEnsemble&);

// Sorted indices of the features used by at least one split node.
std::vector<int> RelevantFeatures(const TreeEnsemble& model);

}  // namespace treeattr

#endif  // TREEATTR_MODEL_H_
