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

#include "treeattr/banzhaf.h"

#include "traversal.h"

namespace treeattr {
namespace {

// Neutral features multiply the scalar state by exactly 1, so paths need no
// padding.
template <typename Real>
struct BanzhafPolicy {
  using State = Real;
  static constexpr bool kPadsPaths = false;

  static State Root() { return Real(1); }
  static void Add(State& state, const Real& delta, OpCounter* ops) {
    state = AddFeatureBanzhaf(state, delta, ops);
  }
  static void Del(State& state, const Real& delta, OpCounter* ops) {
    state = DelFeatureBanzhaf(state, delta, ops);
  }
  static void Scale(State& state, const Real& factor, OpCounter* ops) {
    state *= factor;
    if (ops != nullptr) ++ops->scale_count;
  }
  static Real Total(const State& state) { return state; }
  static State Weighted(const State& state, const Real& value) {
    return state * value;
  }
  static void Accumulate(State& into, const State& other) { into += other; }
  static void Subtract(State& into, const State& other) { into -= other; }
};

}  // namespace

template <typename Real>
Explanation<Real> ExplainBanzhafBasic(const TreeEnsemble& model,
                                      std::span<const double> x) {
  return internal::ExplainEnsemble<Real, internal::BasicTraversal,
                                   BanzhafPolicy<Real>>(model, x,
                                                        Method::kBanzhafBasic);
}

template <typename Real>
Explanation<Real> ExplainBanzhafFast(const TreeEnsemble& model,
                                     std::span<const double> x) {
  return internal::ExplainEnsemble<Real, internal::FastTraversal,
                                   BanzhafPolicy<Real>>(model, x,
                                                        Method::kBanzhafFast);
}

template Explanation<double> ExplainBanzhafBasic<double>(
    const TreeEnsemble&, std::span<const double>);
template Explanation<Rational> ExplainBanzhafBasic<Rational>(
    const TreeEnsemble&, std::span<const double>);
template Explanation<double> ExplainBanzhafFast<double>(
    const TreeEnsemble&, std::span<const double>);
template Explanation<Rational> ExplainBanzhafFast<Rational>(
    const TreeEnsemble&, std::span<const double>);

}  // namespace treeattr
