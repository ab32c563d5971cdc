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

#include "treeattr/shapley.h"

#include <vector>

#include "traversal.h"

namespace treeattr {
namespace {

template <typename Real>
struct ShapleyPolicy {
  using State = ShapState<Real>;
  static constexpr bool kPadsPaths = true;

  static State Root() { return State{Real(1)}; }
  static void Add(State& state, const Real& delta, OpCounter* ops) {
    AddFeature(state, delta, ops);
  }
  static void Del(State& state, const Real& delta, OpCounter* ops) {
    DelFeature(state, delta, ops);
  }
  static void Scale(State& state, const Real& factor, OpCounter* ops) {
    ScaleState(state, factor, ops);
  }
  static Real Total(const State& state) { return StateTotal(state); }
  static State Weighted(const State& state, const Real& value) {
    State out = state;
    for (Real& entry : out) entry *= value;
    return out;
  }
  static void Accumulate(State& into, const State& other) {
    for (std::size_t k = 0; k < into.size(); ++k) into[k] += other[k];
  }
  static void Subtract(State& into, const State& other) {
    for (std::size_t k = 0; k < into.size(); ++k) into[k] -= other[k];
  }
};

}  // namespace

template <typename Real>
Explanation<Real> ExplainShapleyBasic(const TreeEnsemble& model,
                                      std::span<const double> x) {
  return internal::ExplainEnsemble<Real, internal::BasicTraversal,
                                   ShapleyPolicy<Real>>(model, x,
                                                        Method::kShapleyBasic);
}

template <typename Real>
Explanation<Real> ExplainShapleyFast(const TreeEnsemble& model,
                                     std::span<const double> x) {
  return internal::ExplainEnsemble<Real, internal::FastTraversal,
                                   ShapleyPolicy<Real>>(model, x,
                                                        Method::kShapleyFast);
}

template Explanation<double> ExplainShapleyBasic<double>(
    const TreeEnsemble&, std::span<const double>);
template Explanation<Rational> ExplainShapleyBasic<Rational>(
    const TreeEnsemble&, std::span<const double>);
template Explanation<double> ExplainShapleyFast<double>(
    const TreeEnsemble&, std::span<const double>);
template Explanation<Rational> ExplainShapleyFast<Rational>(
    const TreeEnsemble&, std::span<const double>);

}  // namespace treeattr
