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

#include "treeattr/model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace treeattr {
namespace {

using nlohmann::json;

constexpr double kCoverageRelTolerance = 1e-9;

absl::Status ValidateTree(const Tree& tree, int tree_index, int num_features) {
  const int num_nodes = static_cast<int>(tree.nodes.size());
  if (num_nodes == 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("tree ", tree_index, " has no nodes"));
  }
  std::vector<int> parent(num_nodes, -1);
  for (int i = 0; i < num_nodes; ++i) {
    const TreeNode& node = tree.nodes[i];
    if (!std::isfinite(node.coverage) || node.coverage <= 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("tree ", tree_index, " node ", i,
                       ": coverage must be positive, got ", node.coverage));
    }
    if (node.is_leaf()) {
      if (!std::isfinite(node.value)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "tree ", tree_index, " node ", i, ": leaf value is not finite"));
      }
      continue;
    }
    if (node.feature < 0 || node.feature >= num_features) {
      return absl::InvalidArgumentError(absl::StrCat(
          "tree ", tree_index, " node ", i, ": feature index ", node.feature,
          " out of range [0, ", num_features, ")"));
    }
    if (std::isnan(node.threshold)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "tree ", tree_index, " node ", i, ": threshold is NaN"));
    }
    for (const int child : {node.left, node.right}) {
      if (child <= 0 || child >= num_nodes) {
        return absl::InvalidArgumentError(
            absl::StrCat("tree ", tree_index, " node ", i, ": child index ",
                         child, " out of range"));
      }
      if (parent[child] != -1) {
        return absl::InvalidArgumentError(
            absl::StrCat("tree ", tree_index, " node ", child,
                         " has more than one parent"));
      }
      parent[child] = i;
    }
    const double children =
        tree.nodes[node.left].coverage + tree.nodes[node.right].coverage;
    if (std::fabs(children - node.coverage) >
        kCoverageRelTolerance * node.coverage) {
      return absl::InvalidArgumentError(absl::StrCat(
          "tree ", tree_index, " node ", i, ": coverage ", node.coverage,
          " != left + right = ", children));
    }
  }
  // Every non-root node has exactly one parent, so reachability from the
  // root rules out both orphans and cycles.
  std::vector<char> seen(num_nodes, 0);
  std::vector<int> pending = {0};
  int reached = 0;
  while (!pending.empty()) {
    const int v = pending.back();
    pending.pop_back();
    if (seen[v]) {
      return absl::InvalidArgumentError(
          absl::StrCat("tree ", tree_index, " has a cycle at node ", v));
    }
    seen[v] = 1;
    ++reached;
    const TreeNode& node = tree.nodes[v];
    if (!node.is_leaf()) {
      pending.push_back(node.left);
      pending.push_back(node.right);
    }
  }
  if (reached != num_nodes) {
    for (int i = 0; i < num_nodes; ++i) {
      if (!seen[i]) {
        return absl::InvalidArgumentError(absl::StrCat(
            "tree ", tree_index, " node ", i, " is not reachable from root"));
      }
    }
  }
  return absl::OkStatus();
}

template <typename T>
absl::StatusOr<T> Field(const json& object, const char* key, int tree,
                        int node) {
  auto it = object.find(key);
  if (it == object.end()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "tree ", tree, " node ", node, ": missing field \"", key, "\""));
  }
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat(
        "tree ", tree, " node ", node, ": field \"", key, "\": ", e.what()));
  }
}

absl::StatusOr<TreeNode> ParseNode(const json& object, int tree, int node) {
  if (!object.is_object()) {
    return absl::InvalidArgumentError(
        absl::StrCat("tree ", tree, " node ", node, ": not an object"));
  }
  auto kind = Field<std::string>(object, "kind", tree, node);
  if (!kind.ok()) return kind.status();
  auto coverage = Field<double>(object, "coverage", tree, node);
  if (!coverage.ok()) return coverage.status();
  if (*kind == "leaf") {
    auto value = Field<double>(object, "value", tree, node);
    if (!value.ok()) return value.status();
    return TreeNode::Leaf(*value, *coverage);
  }
  if (*kind != "split") {
    return absl::InvalidArgumentError(absl::StrCat(
        "tree ", tree, " node ", node, ": unknown kind \"", *kind, "\""));
  }
  auto feature = Field<int>(object, "feature", tree, node);
  if (!feature.ok()) return feature.status();
  auto threshold = Field<double>(object, "threshold", tree, node);
  if (!threshold.ok()) return threshold.status();
  auto left = Field<int>(object, "left", tree, node);
  if (!left.ok()) return left.status();
  auto right = Field<int>(object, "right", tree, node);
  if (!right.ok()) return right.status();
  return TreeNode::Split(*feature, *threshold, *left, *right, *coverage);
}

}  // namespace

TreeNode TreeNode::Split(int feature, double threshold, int left, int right,
                         double coverage) {
  TreeNode node;
  node.kind = NodeKind::kSplit;
  node.feature = feature;
  node.threshold = threshold;
  node.left = left;
  node.right = right;
  node.coverage = coverage;
  return node;
}

TreeNode TreeNode::Leaf(double value, double coverage) {
  TreeNode node;
  node.kind = NodeKind::kLeaf;
  node.value = value;
  node.coverage = coverage;
  return node;
}

int Tree::Depth() const {
  int depth = 0;
  std::vector<std::pair<int, int>> pending = {{0, 0}};
  while (!pending.empty()) {
    const auto [v, d] = pending.back();
    pending.pop_back();
    depth = std::max(depth, d);
    const TreeNode& node = nodes[v];
    if (!node.is_leaf()) {
      pending.emplace_back(node.left, d + 1);
      pending.emplace_back(node.right, d + 1);
    }
  }
  return depth;
}

int Tree::NumLeaves() const {
  return static_cast<int>(std::count_if(
      nodes.begin(), nodes.end(),
      [](const TreeNode& node) { return node.is_leaf(); }));
}

int TreeEnsemble::MaxDepth() const {
  int depth = 0;
  for (const Tree& tree : trees) depth = std::max(depth, tree.Depth());
  return depth;
}

int TreeEnsemble::TotalLeaves() const {
  int leaves = 0;
  for (const Tree& tree : trees) leaves += tree.NumLeaves();
  return leaves;
}

absl::Status ValidateModel(const TreeEnsemble& model) {
  if (model.num_features < 0) {
    return absl::InvalidArgumentError("num_features must be non-negative");
  }
  if (model.trees.empty()) {
    return absl::InvalidArgumentError("model has no trees");
  }
  for (int t = 0; t < static_cast<int>(model.trees.size()); ++t) {
    if (auto status = ValidateTree(model.trees[t], t, model.num_features);
        !status.ok()) {
      return status;
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<TreeEnsemble> ParseModelJson(std::string_view text) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("model JSON parse error: ", e.what()));
  }
  if (!document.is_object()) {
    return absl::InvalidArgumentError("model JSON must be an object");
  }
  TreeEnsemble model;
  try {
    if (document.value("format_version", 0) != 1) {
      return absl::InvalidArgumentError(
          "unsupported or missing format_version (expected 1)");
    }
    if (!document.contains("num_features")) {
      return absl::InvalidArgumentError("missing num_features");
    }
    model.num_features = document.at("num_features").get<int>();
    const std::string aggregation = document.value("aggregation", "average");
    if (aggregation == "average") {
      model.aggregation = Aggregation::kAverage;
    } else if (aggregation == "sum") {
      model.aggregation = Aggregation::kSum;
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown aggregation \"", aggregation, "\""));
    }
    if (!document.contains("trees") || !document.at("trees").is_array()) {
      return absl::InvalidArgumentError("missing trees array");
    }
    int t = 0;
    for (const json& tree_json : document.at("trees")) {
      if (!tree_json.contains("nodes") || !tree_json.at("nodes").is_array()) {
        return absl::InvalidArgumentError(
            absl::StrCat("tree ", t, ": missing nodes array"));
      }
      Tree tree;
      int i = 0;
      for (const json& node_json : tree_json.at("nodes")) {
        auto node = ParseNode(node_json, t, i++);
        if (!node.ok()) return node.status();
        tree.nodes.push_back(*node);
      }
      model.trees.push_back(std::move(tree));
      ++t;
    }
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed model JSON: ", e.what()));
  }
  if (auto status = ValidateModel(model); !status.ok()) return status;
  return model;
}

absl::StatusOr<TreeEnsemble> LoadModel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open model file ", path));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseModelJson(buffer.str());
}

std::string ModelToJson(const TreeEnsemble& model) {
  json document;
  document["format_version"] = 1;
  document["num_features"] = model.num_features;
  document["aggregation"] =
      model.aggregation == Aggregation::kAverage ? "average" : "sum";
  json trees = json::array();
  for (const Tree& tree : model.trees) {
    json nodes = json::array();
    for (const TreeNode& node : tree.nodes) {
      if (node.is_leaf()) {
        nodes.push_back({{"kind", "leaf"},
                         {"value", node.value},
                         {"coverage", node.coverage}});
      } else {
        nodes.push_back({{"kind", "split"},
                         {"feature", node.feature},
                         {"threshold", node.threshold},
                         {"left", node.left},
                         {"right", node.right},
                         {"coverage", node.coverage}});
      }
    }
    trees.push_back({{"nodes", std::move(nodes)}});
  }
  document["trees"] = std::move(trees);
  return document.dump();
}

bool HasIntegerCoverages(const TreeEnsemble& model) {
  for (const Tree& tree : model.trees) {
    for (const TreeNode& node : tree.nodes) {
      if (node.coverage != std::floor(node.coverage)) return false;
    }
  }
  return true;
}

absl::Status CheckFeatureVector(const TreeEnsemble& model,
                                std::span<const double> x) {
  if (static_cast<int>(x.size()) != model.num_features) {
    return absl::InvalidArgumentError(
        absl::StrCat("feature vector has ", x.size(), " entries, model expects ",
                     model.num_features));
  }
  return absl::OkStatus();
}

double PredictTree(const Tree& tree, std::span<const double> x) {
  int v = 0;
  while (!tree.nodes[v].is_leaf()) {
    const TreeNode& node = tree.nodes[v];
    v = x[node.feature] < node.threshold ? node.left : node.right;
  }
  return tree.nodes[v].value;
}

double Predict(const TreeEnsemble& model, std::span<const double> x) {
  double total = 0;
  for (const Tree& tree : model.trees) total += PredictTree(tree, x);
  return total * model.TreeWeight<double>();
}

template <typename Real>
Real ExpectedValue(const TreeEnsemble& model) {
  Real total(0);
  for (const Tree& tree : model.trees) {
    const Real root_coverage = FromDouble<Real>(tree.root().coverage);
    for (const TreeNode& node : tree.nodes) {
      if (!node.is_leaf()) continue;
      total += FromDouble<Real>(node.value) * FromDouble<Real>(node.coverage) /
               root_coverage;
    }
  }
  return total * model.TreeWeight<Real>();
}

template double ExpectedValue<double>(const TreeEnsemble&);
template Rational ExpectedValue<Rational>(const TreeEnsemble&);

std::vector<int> RelevantFeatures(const TreeEnsemble& model) {
  std::set<int> features;
  for (const Tree& tree : model.trees) {
    for (const TreeNode& node : tree.nodes) {
      if (!node.is_leaf()) features.insert(node.feature);
    }
  }
  return {features.begin(), features.end()};
}

}  // namespace treeattr
