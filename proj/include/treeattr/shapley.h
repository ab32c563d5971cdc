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

// Exact Shapley values of tree ensembles under the path-dependent
// (coverage-weighted) set function.
//
// The dynamic program runs over states psi = (psi_0, ..., psi_m) where, for a
// node v and a feature set G with |G| = m,
//
//   psi_k = 1/(m+1) * sum_{S subset G, |S| = k} C(m, k)^-1 * P[v, S]
//
// and P[v, S] is the weight the coverage-weighted evaluation with features S
// fixed assigns to v. Adding a feature y to G maps psi to
//
//   psi'_k = (m+1-k)/(m+2) * psi_k + k/(m+2) * delta_y * psi_{k-1},
//
// with delta_y = [x_y in I_y] / c_y taken from the PathContext.
//
// ExplainShapleyBasic visits every (leaf, path feature) pair and is
// O(L D^2) per tree. ExplainShapleyFast pads every path to the tree depth D
// with neutral features, aggregates leaf states bottom-up and removes the
// split feature once per node, for O(L D) per tree.

#ifndef TREEATTR_SHAPLEY_H_
#define TREEATTR_SHAPLEY_H_

#include <span>
#include <stdexcept>
#include <vector>

#include "treeattr/attribution.h"
#include "treeattr/model.h"
#include "treeattr/rational.h"

namespace treeattr {

template <typename Real>
using ShapState = std::vector<Real>;

// In place: length m+1 -> m+2.
template <typename Real>
void AddFeature(ShapState<Real>& psi, const Real& delta,
                OpCounter* ops = nullptr) {
  const long m = static_cast<long>(psi.size()) - 1;
  const Real denominator(m + 2);
  psi.push_back(Real(0));
  for (long k = m + 1; k >= 0; --k) {
    Real next = Real(m + 1 - k) * psi[k];
    if (k > 0) next += Real(k) * delta * psi[k - 1];
    psi[k] = next / denominator;
  }
  if (ops != nullptr) ops->add_count += psi.size();
}

// Inverse of AddFeature: length m+1 -> m. Throws std::logic_error on a
// length-1 state.
template <typename Real>
void DelFeature(ShapState<Real>& psi, const Real& delta,
                OpCounter* ops = nullptr) {
  if (psi.size() < 2) {
    throw std::logic_error("DelFeature on a state with no features");
  }
  const long m = static_cast<long>(psi.size()) - 1;
  const Real numerator(m + 1);
  if (delta == Real(0)) {
    for (long k = 0; k < m; ++k) psi[k] = numerator * psi[k] / Real(m - k);
    psi.pop_back();
  } else {
    // Solve from the top, psi_k = ((m-k) b_k + k delta b_{k-1}) / (m+1)
    // with b_m = 0, storing b_{k-1} in slot k. Unlike the bottom-up
    // solution, which multiplies rounding errors by up to delta^m, this
    // direction damps them.
    Real above(0);
    for (long k = m; k >= 1; --k) {
      Real below = numerator * psi[k];
      below -= Real(m - k) * above;
      below /= Real(k) * delta;
      psi[k] = below;
      above = below;
    }
    psi.erase(psi.begin());
  }
  if (ops != nullptr) ops->del_count += psi.size();
}

template <typename Real>
void ScaleState(ShapState<Real>& psi, const Real& factor,
                OpCounter* ops = nullptr) {
  for (Real& value : psi) value *= factor;
  if (ops != nullptr) ops->scale_count += psi.size();
}

// Sum of the entries; equals ||psi||_1 for states, which are non-negative.
template <typename Real>
Real StateTotal(const ShapState<Real>& psi) {
  Real total(0);
  for (const Real& value : psi) total += value;
  return total;
}

// Preconditions: CheckFeatureVector(model, x) is ok. Rational execution
// additionally needs HasIntegerCoverages(model).
template <typename Real>
Explanation<Real> ExplainShapleyBasic(const TreeEnsemble& model,
                                      std::span<const double> x);
template <typename Real>
Explanation<Real> ExplainShapleyFast(const TreeEnsemble& model,
                                     std::span<const double> x);

extern template Explanation<double> ExplainShapleyBasic<double>(
    const TreeEnsemble&, std::span<const double>);
extern template Explanation<Rational> ExplainShapleyBasic<Rational>(
    const TreeEnsemble&, std::span<const double>);
extern template Explanation<double> ExplainShapleyFast<double>(
    const TreeEnsemble&, std::span<const double>);
extern template Explanation<Rational> ExplainShapleyFast<Rational>(
    const TreeEnsemble&, std::span<const double>);

}  // namespace treeattr

#endif  // TREEATTR_SHAPLEY_H_
