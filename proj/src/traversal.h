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

// Tree traversals shared by the Shapley and Banzhaf explainers. A `Policy`
// supplies the state type and its moves:
//
//   using State;
//   static constexpr bool kPadsPaths;   // fast variant pads to depth D
//   static State Root();                 // state of (root, {})
//   static void Add(State&, const Real& delta, OpCounter*);
//   static void Del(State&, const Real& delta, OpCounter*);
//   static void Scale(State&, const Real& factor, OpCounter*);
//   static Real Total(const State&);
//   static State Weighted(const State&, const Real& value);  // value * state
//   static void Accumulate(State&, const State&);             // +=
//   static void Subtract(State&, const State&);               // -=
//
// Internal header; include only from the explainer sources.

#ifndef TREEATTR_SRC_TRAVERSAL_H_
#define TREEATTR_SRC_TRAVERSAL_H_

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "treeattr/attribution.h"
#include "treeattr/model.h"
#include "treeattr/path_context.h"
#include "treeattr/rational.h"

namespace treeattr::internal {

// Visits every leaf with the state of (leaf, F_leaf) and charges each path
// feature separately.
template <typename Real, typename Policy>
class BasicTraversal {
 public:
  using State = typename Policy::State;

  BasicTraversal(const Tree& tree, std::span<const double> x,
                 int num_features, std::vector<Real>& values, OpCounter& ops)
      : tree_(tree), context_(num_features, x), values_(values), ops_(ops) {}

  void Run() {
    const TreeNode& root = tree_.root();
    if (root.is_leaf()) return;
    state_ = Policy::Root();
    Visit(0, Side::kLeft);
    Visit(0, Side::kRight);
  }

 private:
  void Visit(int parent, Side side) {
    const TreeNode& parent_node = tree_.nodes[parent];
    const int v = parent_node.child(side);
    const TreeNode& node = tree_.nodes[v];
    const Real ratio = FromDouble<Real>(node.coverage) /
                       FromDouble<Real>(parent_node.coverage);

    const auto step = context_.Descend(tree_, parent, side);
    if (step.delta_old) Policy::Del(state_, *step.delta_old, &ops_);
    Policy::Scale(state_, ratio, &ops_);
    Policy::Add(state_, step.delta_new, &ops_);

    if (!node.is_leaf()) {
      Visit(v, Side::kLeft);
      Visit(v, Side::kRight);
    } else {
      const Real leaf_value = FromDouble<Real>(node.value);
      for (const int feature : context_.path_features()) {
        const Real delta = context_.Delta(feature);
        Policy::Del(state_, delta, &ops_);
        values_[feature] +=
            Policy::Total(state_) * leaf_value * (delta - Real(1));
        Policy::Add(state_, delta, &ops_);
      }
    }

    Policy::Del(state_, step.delta_new, &ops_);
    Policy::Scale(state_, Real(1) / ratio, &ops_);
    if (step.delta_old) Policy::Add(state_, *step.delta_old, &ops_);
    context_.Ascend();
  }

  const Tree& tree_;
  PathContext<Real> context_;
  std::vector<Real>& values_;
  OpCounter& ops_;
  State state_;
};

// Computes, for every node v, the subtree sum S(v) of f(l) * state(l) over
// its leaves, removes the contributions of same-feature descendants to get
// the leaves for which v is the nearest ancestor splitting on z_v, and
// charges the whole group to z_v at once.
//
// Same-feature descendants are tracked with one stack per feature. A node is
// pushed, together with S(node), when it returns and its split feature was
// already on the path above it; on return, v pops everything pushed on its
// feature's stack since it was entered. Those entries are exactly its
// nearest same-feature descendants.
template <typename Real, typename Policy>
class FastTraversal {
 public:
  using State = typename Policy::State;

  FastTraversal(const Tree& tree, std::span<const double> x, int num_features,
                std::vector<Real>& values, OpCounter& ops)
      : tree_(tree),
        context_(num_features, x),
        stacks_(num_features),
        values_(values),
        ops_(ops) {}

  void Run() {
    const TreeNode& root = tree_.root();
    if (root.is_leaf()) return;
    state_ = Policy::Root();
    if constexpr (Policy::kPadsPaths) {
      const int depth = tree_.Depth();
      for (int i = 0; i < depth; ++i) Policy::Add(state_, Real(1), &ops_);
    }
    Visit(0, Side::kLeft);
    Visit(0, Side::kRight);
    for (const auto& stack : stacks_) {
      if (!stack.empty()) {
        throw std::logic_error("feature stack not empty after traversal");
      }
    }
  }

 private:
  struct StackEntry {
    int node;
    State subtree_sum;
  };

  State Visit(int parent, Side side) {
    const TreeNode& parent_node = tree_.nodes[parent];
    const int v = parent_node.child(side);
    const TreeNode& node = tree_.nodes[v];
    const int feature = parent_node.feature;
    const Real ratio = FromDouble<Real>(node.coverage) /
                       FromDouble<Real>(parent_node.coverage);
    std::vector<StackEntry>& stack = stacks_[feature];
    const std::size_t entry_height = stack.size();

    const auto step = context_.Descend(tree_, parent, side);
    const bool repeated = step.delta_old.has_value();
    if (repeated) {
      Policy::Del(state_, *step.delta_old, &ops_);
    } else if constexpr (Policy::kPadsPaths) {
      Policy::Del(state_, Real(1), &ops_);
    }
    Policy::Scale(state_, ratio, &ops_);
    Policy::Add(state_, step.delta_new, &ops_);

    State subtree_sum;
    if (!node.is_leaf()) {
      subtree_sum = Visit(v, Side::kLeft);
      Policy::Accumulate(subtree_sum, Visit(v, Side::kRight));
    } else {
      subtree_sum = Policy::Weighted(state_, FromDouble<Real>(node.value));
    }

    State group = subtree_sum;
    while (stack.size() > entry_height) {
      Policy::Subtract(group, stack.back().subtree_sum);
      stack.pop_back();
    }
    Policy::Del(group, step.delta_new, &ops_);
    values_[feature] += Policy::Total(group) * (step.delta_new - Real(1));

    Policy::Del(state_, step.delta_new, &ops_);
    Policy::Scale(state_, Real(1) / ratio, &ops_);
    if (repeated) {
      Policy::Add(state_, *step.delta_old, &ops_);
    } else if constexpr (Policy::kPadsPaths) {
      Policy::Add(state_, Real(1), &ops_);
    }
    context_.Ascend();

    if (repeated) stack.push_back({v, subtree_sum});
    return subtree_sum;
  }

  const Tree& tree_;
  PathContext<Real> context_;
  std::vector<std::vector<StackEntry>> stacks_;
  std::vector<Real>& values_;
  OpCounter& ops_;
  State state_;
};

template <typename Real, template <typename, typename> class Traversal,
          typename Policy>
Explanation<Real> ExplainEnsemble(const TreeEnsemble& model,
                                  std::span<const double> x, Method method) {
  Explanation<Real> out;
  out.attribution.method = method;
  out.attribution.values.assign(model.num_features, Real(0));
  for (const Tree& tree : model.trees) {
    Traversal<Real, Policy> traversal(tree, x, model.num_features,
                                      out.attribution.values, out.ops);
    traversal.Run();
  }
  const Real weight = model.TreeWeight<Real>();
  for (Real& value : out.attribution.values) value *= weight;
  out.attribution.expected_value = ExpectedValue<Real>(model);
  return out;
}

}  // namespace treeattr::internal

#endif  // TREEATTR_SRC_TRAVERSAL_H_
