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

// Per-feature bookkeeping along the current root-to-node path of a
// depth-first traversal.
//
// For the node v currently visited and every feature y the context holds
//   * I[y]: the smallest interval x_y must lie in for evaluation to reach v,
//   * c[y]: the product of r_u / r_parent(u) over the path nodes u whose
//           parent splits on y,
// and derives delta(y) = [x_y in I[y]] / c[y]. Moving to a child changes the
// entry of a single feature (the one the parent splits on), so each step is
// O(1) and is undone exactly by Ascend().

#ifndef TREEATTR_PATH_CONTEXT_H_
#define TREEATTR_PATH_CONTEXT_H_

#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "treeattr/model.h"
#include "treeattr/rational.h"

namespace treeattr {

// Interval with independently open or closed endpoints. Infinite endpoints
// are always open.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = false;
  bool hi_closed = false;

  bool Contains(double value) const {
    if (value < lo || (value == lo && !lo_closed)) return false;
    if (value > hi || (value == hi && !hi_closed)) return false;
    return true;
  }

  // Intersection with (-inf, t), the set of values sent left by a split.
  Interval BelowThreshold(double t) const {
    Interval out = *this;
    if (t < hi || (t == hi && hi_closed)) {
      out.hi = t;
      out.hi_closed = false;
    }
    return out;
  }

  // Intersection with [t, inf), the set of values sent right by a split.
  Interval AtOrAboveThreshold(double t) const {
    Interval out = *this;
    if (t > lo || (t == lo && !lo_closed)) {
      out.lo = t;
      out.lo_closed = true;
    }
    return out;
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

template <typename Real>
class PathContext {
 public:
  struct Step {
    // delta of the split feature in the parent's context; empty when the
    // feature was not yet on the path.
    std::optional<Real> delta_old;
    Real delta_new;
  };

  PathContext(int num_features, std::span<const double> x)
      : x_(x.begin(), x.end()),
        intervals_(num_features),
        coverage_products_(num_features, Real(1)),
        path_count_(num_features, 0) {}

  // Moves from `parent` (a split node of `tree`) to its child on `side`.
  Step Descend(const Tree& tree, int parent, Side side) {
    const TreeNode& parent_node = tree.nodes[parent];
    const TreeNode& child_node = tree.nodes[parent_node.child(side)];
    const int feature = parent_node.feature;

    Step step;
    if (path_count_[feature] > 0) step.delta_old = Delta(feature);

    saved_.push_back({feature, intervals_[feature],
                      coverage_products_[feature]});
    Interval& interval = intervals_[feature];
    interval = side == Side::kLeft
                   ? interval.BelowThreshold(parent_node.threshold)
                   : interval.AtOrAboveThreshold(parent_node.threshold);
    coverage_products_[feature] *= FromDouble<Real>(child_node.coverage);
    coverage_products_[feature] /= FromDouble<Real>(parent_node.coverage);
    if (path_count_[feature]++ == 0) path_features_.push_back(feature);

    step.delta_new = Delta(feature);
    return step;
  }

  void Ascend() {
    if (saved_.empty()) {
      throw std::logic_error("PathContext::Ascend without matching Descend");
    }
    const Saved& saved = saved_.back();
    intervals_[saved.feature] = saved.interval;
    coverage_products_[saved.feature] = saved.coverage_product;
    if (--path_count_[saved.feature] == 0) path_features_.pop_back();
    saved_.pop_back();
  }

  Real Delta(int feature) const {
    if (!intervals_[feature].Contains(x_[feature])) return Real(0);
    return Real(1) / coverage_products_[feature];
  }

  bool OnPath(int feature) const { return path_count_[feature] > 0; }
  // Distinct features split on by strict ancestors of the current node, in
  // order of first appearance.
  std::span<const int> path_features() const { return path_features_; }
  int depth() const { return static_cast<int>(saved_.size()); }

  const Interval& interval(int feature) const { return intervals_[feature]; }
  const Real& coverage_product(int feature) const {
    return coverage_products_[feature];
  }

  bool operator==(const PathContext& other) const {
    return x_ == other.x_ && intervals_ == other.intervals_ &&
           coverage_products_ == other.coverage_products_ &&
           path_count_ == other.path_count_ &&
           path_features_ == other.path_features_ &&
           saved_.size() == other.saved_.size();
  }

 private:
  struct Saved {
    int feature;
    Interval interval;
    Real coverage_product;
  };

  std::vector<double> x_;
  std::vector<Interval> intervals_;
  std::vector<Real> coverage_products_;
  std::vector<int> path_count_;
  std::vector<int> path_features_;
  std::vector<Saved> saved_;
};

}  // namespace treeattr

#endif  // TREEATTR_PATH_CONTEXT_H_
