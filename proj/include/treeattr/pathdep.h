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

// Ground truth by direct enumeration.
//
// g(S) is the coverage-weighted estimate of E[f(x_S, X_rest)]: walk each tree
// from the root; at a split on a feature in S follow x, otherwise return the
// coverage-weighted average of both children. Ensembles aggregate the
// per-tree values like the model output does.
//
// OracleValues then sums w(|S|) * (g(S + i) - g(S)) over every subset S of
// the relevant features (those used by some split). Features never split on
// cannot change g, so restricting the enumeration to them is exact for the
// Shapley and Banzhaf weights, and their attributions are exactly zero.

#ifndef TREEATTR_PATHDEP_H_
#define TREEATTR_PATHDEP_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "treeattr/attribution.h"
#include "treeattr/model.h"
#include "treeattr/rational.h"

namespace treeattr {

// 2^25 subsets is the largest enumeration we attempt.
inline constexpr int kOracleMaxFeatures = 25;

// Subset of the relevant features, as a bitmask over their sorted order.
class FeatureSubset {
 public:
  FeatureSubset(std::span<const int> relevant, std::uint32_t mask)
      : relevant_(relevant), mask_(mask) {}

  bool contains_bit(int bit) const { return (mask_ >> bit) & 1u; }
  std::uint32_t mask() const { return mask_; }
  int size() const { return __builtin_popcount(mask_); }
  // Membership over all n features.
  std::vector<char> Membership(int num_features) const;

 private:
  std::span<const int> relevant_;
  std::uint32_t mask_;
};

struct WeightScheme {
  enum class Kind { kShapley, kBanzhaf, kCustom };
  Kind kind = Kind::kShapley;
  // kCustom only: weight of a subset of size k, for k = 0..n-1.
  std::vector<double> per_size;

  static WeightScheme Shapley() { return {Kind::kShapley, {}}; }
  static WeightScheme Banzhaf() { return {Kind::kBanzhaf, {}}; }
  static WeightScheme Custom(std::vector<double> per_size) {
    return {Kind::kCustom, std::move(per_size)};
  }
};

// Weights indexed by subset size k = 0..n-1 for a game with n players:
// Shapley 1/n * C(n-1, k)^-1, Banzhaf 2^-(n-1). Custom weights must be
// non-negative with sum_k C(n-1, k) w_k == 1 (1e-9 tolerance).
template <typename Real>
absl::StatusOr<std::vector<Real>> SubsetWeights(const WeightScheme& scheme,
                                                int n);

// `in_subset[i]` marks the features fixed to x. Sizes must match the model.
template <typename Real>
Real EvalG(const TreeEnsemble& model, std::span<const double> x,
           std::span<const char> in_subset);

// g over every subset of the relevant features, indexed by bitmask.
template <typename Real>
struct SubsetTable {
  int num_features = 0;
  std::vector<int> relevant;
  std::vector<Real> g;
};

// Fails with OutOfRange when the model uses more than kOracleMaxFeatures
// features. Each tree is enumerated over its own features only and the
// per-tree tables are then summed.
template <typename Real>
absl::StatusOr<SubsetTable<Real>> EvalAllSubsets(const TreeEnsemble& model,
                                                 std::span<const double> x);

template <typename Real>
absl::StatusOr<BasicAttribution<Real>> ValuesFromTable(
    const SubsetTable<Real>& table, const WeightScheme& scheme);

// EvalAllSubsets followed by ValuesFromTable. InvalidArgument for bad custom
// weights.
template <typename Real>
absl::StatusOr<BasicAttribution<Real>> OracleValues(const TreeEnsemble& model,
                                                    std::span<const double> x,
                                                    const WeightScheme& scheme);

extern template absl::StatusOr<std::vector<double>> SubsetWeights<double>(
    const WeightScheme&, int);
extern template absl::StatusOr<std::vector<Rational>> SubsetWeights<Rational>(
    const WeightScheme&, int);
extern template double EvalG<double>(const TreeEnsemble&,
                                     std::span<const double>,
                                     std::span<const char>);
extern template Rational EvalG<Rational>(const TreeEnsemble&,
                                         std::span<const double>,
                                         std::span<const char>);
extern template absl::StatusOr<SubsetTable<double>> EvalAllSubsets<double>(
    const TreeEnsemble&, std::span<const double>);
extern template absl::StatusOr<SubsetTable<Rational>> EvalAllSubsets<Rational>(
    const TreeEnsemble&, std::span<const double>);
extern template absl::StatusOr<BasicAttribution<double>>
ValuesFromTable<double>(const SubsetTable<double>&, const WeightScheme&);
extern template absl::StatusOr<BasicAttribution<Rational>>
ValuesFromTable<Rational>(const SubsetTable<Rational>&, const WeightScheme&);
extern template absl::StatusOr<BasicAttribution<double>> OracleValues<double>(
    const TreeEnsemble&, std::span<const double>, const WeightScheme&);
extern template absl::StatusOr<BasicAttribution<Rational>>
OracleValues<Rational>(const TreeEnsemble&, std::span<const double>,
                       const WeightScheme&);

}  // namespace treeattr

#endif  // TREEATTR_PATHDEP_H_
