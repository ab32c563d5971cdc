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

#include "treeattr/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "treeattr/banzhaf.h"
#include "treeattr/shapley.h"

namespace treeattr {
namespace {

constexpr double kLeafCoverage = 33;
constexpr double kRightValue = 777;
constexpr double kThreshold = 1;

// Appends a subtree rooted at `depth` (the root of the whole tree is depth
// 0) and returns its node index. Features are 0-based: depth i splits on
// feature d-1-i.
int AppendSubtree(SyntheticKind kind, int d, int depth, double leaf_value,
                  std::vector<TreeNode>& nodes) {
  const int index = static_cast<int>(nodes.size());
  if (depth == d) {
    nodes.push_back(TreeNode::Leaf(leaf_value, kLeafCoverage));
    return index;
  }
  nodes.push_back(TreeNode::Split(d - 1 - depth, kThreshold, -1, -1, 0));
  int left;
  if (kind == SyntheticKind::kSparse && depth + 1 < d) {
    left = static_cast<int>(nodes.size());
    nodes.push_back(TreeNode::Leaf(leaf_value, kLeafCoverage));
  } else {
    left = AppendSubtree(kind, d, depth + 1, leaf_value, nodes);
  }
  const int right = AppendSubtree(kind, d, depth + 1, leaf_value, nodes);
  nodes[index].left = left;
  nodes[index].right = right;
  nodes[index].coverage = nodes[left].coverage + nodes[right].coverage;
  return index;
}

}  // namespace

std::string_view SyntheticKindName(SyntheticKind kind) {
  return kind == SyntheticKind::kDense ? "dense" : "sparse";
}

absl::StatusOr<SyntheticInstance> GenerateSynthetic(const SyntheticSpec& spec) {
  const int max_depth =
      spec.kind == SyntheticKind::kDense ? kMaxDenseDepth : kMaxSparseDepth;
  if (spec.d < 1 || spec.d > max_depth) {
    return absl::InvalidArgumentError(
        absl::StrCat(std::string(SyntheticKindName(spec.kind)), " instances need 1 <= d <= ",
                     max_depth, ", got ", spec.d));
  }
  const int d = spec.d;
  Tree tree;
  tree.nodes.push_back(TreeNode::Split(d - 1, kThreshold, -1, -1, 0));
  const int left = AppendSubtree(spec.kind, d, 1, 0.0, tree.nodes);
  const int right = AppendSubtree(spec.kind, d, 1, kRightValue, tree.nodes);
  tree.nodes[0].left = left;
  tree.nodes[0].right = right;
  tree.nodes[0].coverage =
      tree.nodes[left].coverage + tree.nodes[right].coverage;

  SyntheticInstance instance;
  instance.model.num_features = d;
  instance.model.aggregation = Aggregation::kAverage;
  instance.model.trees.push_back(std::move(tree));
  instance.x.assign(d, 1.0);
  instance.exact.values.assign(d, Rational(0));
  instance.exact.values[d - 1] = Rational(777, 2);
  instance.exact.expected_value = Rational(777, 2);
  return instance;
}

absl::StatusOr<std::vector<ErrorCurvePoint>> ErrorCurve(
    SyntheticKind kind, std::span<const int> depths,
    std::span<const Method> methods) {
  for (const Method method : methods) {
    if (method == Method::kOracleShapley || method == Method::kOracleBanzhaf) {
      return absl::InvalidArgumentError(
          "error curves run the tree algorithms only");
    }
  }
  std::vector<ErrorCurvePoint> points;
  for (const int depth : depths) {
    auto instance = GenerateSynthetic({kind, depth});
    if (!instance.ok()) return instance.status();
    for (const Method method : methods) {
      Explanation<double> result;
      switch (method) {
        case Method::kShapleyBasic:
          result = ExplainShapleyBasic<double>(instance->model, instance->x);
          break;
        case Method::kShapleyFast:
          result = ExplainShapleyFast<double>(instance->model, instance->x);
          break;
        case Method::kBanzhafBasic:
          result = ExplainBanzhafBasic<double>(instance->model, instance->x);
          break;
        default:
          result = ExplainBanzhafFast<double>(instance->model, instance->x);
          break;
      }
      double error = 0;
      for (int i = 0; i < depth; ++i) {
        const double diff = std::fabs(result.attribution.values[i] -
                                      instance->exact.values[i].get_d());
        // NaN and inf count as unbounded error.
        error = std::isfinite(diff) ? std::max(error, diff)
                                    : std::numeric_limits<double>::infinity();
      }
      points.push_back({depth, method, error});
    }
  }
  return points;
}

std::string ErrorCurveCsv(std::span<const ErrorCurvePoint> points) {
  std::string out = "depth,method,max_abs_error\n";
  char buffer[64];
  for (const ErrorCurvePoint& point : points) {
    std::snprintf(buffer, sizeof(buffer), "%.17g", point.max_abs_error);
    absl::StrAppend(&out, point.depth, ",", std::string(MethodName(point.method)), ",",
                    buffer, "\n");
  }
  return out;
}

namespace {

int AppendRandom(int leaves, int depth, const RandomEnsembleOptions& options,
                 std::mt19937_64& rng, std::vector<TreeNode>& nodes) {
  const int index = static_cast<int>(nodes.size());
  if (leaves <= 1 || depth >= options.max_depth) {
    double coverage;
    if (options.integer_coverages) {
      coverage = std::uniform_int_distribution<int>(
          1, options.max_leaf_coverage)(rng);
    } else {
      coverage = std::uniform_real_distribution<double>(
          0.5, options.max_leaf_coverage)(rng);
    }
    const double value =
        std::uniform_real_distribution<double>(-10.0, 10.0)(rng);
    nodes.push_back(TreeNode::Leaf(value, coverage));
    return index;
  }
  const int feature = std::uniform_int_distribution<int>(
      0, options.relevant_features - 1)(rng);
  const double threshold = std::uniform_int_distribution<int>(
      0, options.threshold_levels - 1)(rng);
  nodes.push_back(TreeNode::Split(feature, threshold, -1, -1, 0));
  const int left_leaves =
      std::uniform_int_distribution<int>(1, leaves - 1)(rng);
  const int left = AppendRandom(left_leaves, depth + 1, options, rng, nodes);
  const int right =
      AppendRandom(leaves - left_leaves, depth + 1, options, rng, nodes);
  nodes[index].left = left;
  nodes[index].right = right;
  nodes[index].coverage = nodes[left].coverage + nodes[right].coverage;
  return index;
}

}  // namespace

TreeEnsemble RandomEnsemble(const RandomEnsembleOptions& options,
                            std::mt19937_64& rng) {
  TreeEnsemble model;
  model.num_features = options.relevant_features + options.dead_features;
  model.aggregation = Aggregation::kAverage;
  const int num_trees = std::uniform_int_distribution<int>(
      options.min_trees, options.max_trees)(rng);
  for (int t = 0; t < num_trees; ++t) {
    const int leaves =
        std::uniform_int_distribution<int>(1, options.max_leaves)(rng);
    Tree tree;
    AppendRandom(leaves, 0, options, rng, tree.nodes);
    model.trees.push_back(std::move(tree));
  }
  return model;
}

std::vector<double> RandomPoint(int num_features, int threshold_levels,
                                std::mt19937_64& rng) {
  std::uniform_int_distribution<int> half_steps(-1, 2 * threshold_levels);
  std::vector<double> x(num_features);
  for (double& value : x) value = 0.5 * half_steps(rng);
  return x;
}

}  // namespace treeattr
