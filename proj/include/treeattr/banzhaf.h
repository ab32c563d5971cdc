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

// Banzhaf values under the same set function as shapley.h. The state is a
// single number beta(v, G) = 2^-|G| * sum_{S subset G} P[v, S], and adding a
// feature multiplies it by (1 + delta) / 2, so every state move is O(1).
//
// ExplainBanzhafBasic evaluates each (leaf, path feature) pair: O(L D) per
// tree. ExplainBanzhafFast aggregates leaf states bottom-up and charges each
// node once: O(L) per tree.

#ifndef TREEATTR_BANZHAF_H_
#define TREEATTR_BANZHAF_H_

#include <span>

#include "treeattr/attribution.h"
#include "treeattr/model.h"
#include "treeattr/rational.h"

namespace treeattr {

template <typename Real>
Real AddFeatureBanzhaf(const Real& beta, const Real& delta,
                       OpCounter* ops = nullptr) {
  if (ops != nullptr) ++ops->add_count;
  return (Real(1) + delta) * beta / Real(2);
}

template <typename Real>
Real DelFeatureBanzhaf(const Real& beta, const Real& delta,
                       OpCounter* ops = nullptr) {
  if (ops != nullptr) ++ops->del_count;
  return Real(2) * beta / (Real(1) + delta);
}

template <typename Real>
Explanation<Real> ExplainBanzhafBasic(const TreeEnsemble& model,
                                      std::span<const double> x);
template <typename Real>
Explanation<Real> ExplainBanzhafFast(const TreeEnsemble& model,
                                     std::span<const double> x);

extern template Explanation<double> ExplainBanzhafBasic<double>(
    const TreeEnsemble&, std::span<const double>);
extern template Explanation<Rational> ExplainBanzhafBasic<Rational>(
    const TreeEnsemble&, std::span<const double>);
extern template Explanation<double> ExplainBanzhafFast<double>(
    const TreeEnsemble&, std::span<const double>);
extern template Explanation<Rational> ExplainBanzhafFast<Rational>(
    const TreeEnsemble&, std::span<const double>);

}  // namespace treeattr

#endif  // TREEATTR_BANZHAF_H_
