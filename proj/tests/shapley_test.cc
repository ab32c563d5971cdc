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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"
#include "treeattr/pathdep.h"
#include "treeattr/synth.h"

namespace treeattr {
namespace {

using ::treeattr::testing::TwoFeatureModel;
using R = Rational;
using State = ShapState<Rational>;

TEST(AddFeature, Examples) {
  State psi = {R(1)};
  AddFeature(psi, R(1));
  EXPECT_EQ(psi, (State{R(1, 2), R(1, 2)}));
  AddFeature(psi, R(1));
  EXPECT_EQ(psi, (State{R(1, 3), R(1, 3), R(1, 3)}));

  State zero = {R(1)};
  AddFeature(zero, R(0));
  EXPECT_EQ(zero, (State{R(1, 2), R(0)}));
}

TEST(AddFeature, UnitAdditionsGiveConstantState) {
  for (int depth = 0; depth <= 12; ++depth) {
    State psi = {R(1)};
    for (int i = 0; i < depth; ++i) AddFeature(psi, R(1));
    EXPECT_EQ(psi, State(depth + 1, R(1, depth + 1)));
  }
}

// psi_k = 1/(m+1) * sum_{S subset G, |S| = k} C(m, k)^-1 prod_{y in S} delta_y
// for the state reached from (1) by adding features with these deltas.
State StateByDefinition(const std::vector<R>& deltas) {
  const int m = static_cast<int>(deltas.size());
  State psi(m + 1, R(0));
  std::vector<R> binomial(m + 1, R(1));
  for (int k = 1; k <= m; ++k) binomial[k] = binomial[k - 1] * (m - k + 1) / k;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    R product(1);
    for (int y = 0; y < m; ++y) {
      if ((mask >> y) & 1u) product *= deltas[y];
    }
    const int k = __builtin_popcount(mask);
    psi[k] += product / (binomial[k] * (m + 1));
  }
  return psi;
}

TEST(AddFeature, MatchesDefinition) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, 6);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<R> deltas;
    State psi = {R(1)};
    const int m = 1 + trial % 8;
    for (int i = 0; i < m; ++i) {
      const int p = pick(rng);
      deltas.push_back(p == 0 ? R(0) : R(p + 1) / R(2));
      AddFeature(psi, deltas.back());
    }
    EXPECT_EQ(psi, StateByDefinition(deltas));
  }
}

TEST(DelFeature, Examples) {
  State psi = {R(1, 2), R(1, 2)};
  DelFeature(psi, R(1));
  EXPECT_EQ(psi, State{R(1)});
  State zero = {R(1, 2), R(0)};
  DelFeature(zero, R(0));
  EXPECT_EQ(zero, State{R(1)});
}

TEST(DelFeature, EmptyStateThrows) {
  State psi = {R(1)};
  EXPECT_THROW(DelFeature(psi, R(1)), std::logic_error);
}

TEST(DelFeature, InvertsAddFeatureExactly) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> numerator(1, 1000);
  std::uniform_int_distribution<int> length(1, 10);
  for (int trial = 0; trial < 300; ++trial) {
    State v(length(rng));
    for (R& value : v) {
      value = R(numerator(rng), numerator(rng));
      value.canonicalize();
    }
    const R delta =
        trial % 4 == 0 ? R(0) : R(numerator(rng) % 100 + 1) + R(1, numerator(rng));
    State psi = v;
    AddFeature(psi, delta);
    DelFeature(psi, delta);
    EXPECT_EQ(psi, v) << trial;
  }
}

TEST(DelFeature, InvertsAddFeatureInFloat) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> deltas(1.0, 100.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> v(1 + trial % 12);
    for (double& value : v) value = unit(rng);
    const double delta = trial % 4 == 0 ? 0.0 : deltas(rng);
    std::vector<double> psi = v;
    AddFeature(psi, delta);
    DelFeature(psi, delta);
    for (std::size_t k = 0; k < v.size(); ++k) {
      EXPECT_NEAR(psi[k], v[k], 1e-12) << trial;
    }
  }
}

TEST(AddFeature, DummyKeepsTotal) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> numerator(0, 50);
  for (int trial = 0; trial < 100; ++trial) {
    State psi(1 + trial % 9);
    for (R& value : psi) value = R(numerator(rng)) / R(7);
    const R before = StateTotal(psi);
    AddFeature(psi, R(1));
    EXPECT_EQ(StateTotal(psi), before);
  }
}

TEST(ScaleState, CommutesWithAddFeature) {
  State a = {R(1, 3), R(2, 5), R(1, 7)};
  State b = a;
  ScaleState(a, R(3, 4));
  AddFeature(a, R(5, 2));
  AddFeature(b, R(5, 2));
  ScaleState(b, R(3, 4));
  EXPECT_EQ(a, b);
}

TEST(OpCounter, CountsEntriesWritten) {
  OpCounter ops;
  std::vector<double> psi = {1.0};
  AddFeature(psi, 1.0, &ops);
  AddFeature(psi, 1.0, &ops);
  DelFeature(psi, 1.0, &ops);
  ScaleState(psi, 0.5, &ops);
  EXPECT_EQ(ops.add_count, 2u + 3u);
  EXPECT_EQ(ops.del_count, 2u);
  EXPECT_EQ(ops.scale_count, 2u);
  EXPECT_EQ(ops.total(), 9u);
}

TEST(ExplainShapley, TwoFeatureTree) {
  const TreeEnsemble model = TwoFeatureModel();
  const std::vector<double> x = {7, 4};
  for (const auto& result :
       {ExplainShapleyBasic<double>(model, x), ExplainShapleyFast<double>(model, x)}) {
    EXPECT_EQ(result.attribution.values, (std::vector<double>{12.5, 7.5}));
    EXPECT_EQ(result.attribution.expected_value, 10);
  }
  EXPECT_EQ(ExplainShapleyFast<Rational>(model, x).attribution.values,
            (std::vector<R>{R(25, 2), R(15, 2)}));
}

TEST(ExplainShapley, UnusedFeatureIsExactlyZero) {
  TreeEnsemble model = TwoFeatureModel();
  model.num_features = 4;
  const std::vector<double> x = {7, 4, 100, -3};
  EXPECT_EQ(ExplainShapleyBasic<double>(model, x).attribution.values[2], 0.0);
  EXPECT_EQ(ExplainShapleyFast<double>(model, x).attribution.values[3], 0.0);
}

TEST(ExplainShapley, SingleLeafTree) {
  const TreeEnsemble model = testing::SingleLeafModel(5, 2);
  const auto result = ExplainShapleyFast<double>(model, std::vector<double>{0, 0});
  EXPECT_EQ(result.attribution.values, (std::vector<double>{0, 0}));
  EXPECT_EQ(result.attribution.expected_value, 5);
}

TEST(ExplainShapley, DenseDepthFour) {
  auto instance = GenerateSynthetic({SyntheticKind::kDense, 4});
  ASSERT_TRUE(instance.ok());
  const std::vector<R> expected = {R(0), R(0), R(0), R(777, 2)};
  EXPECT_EQ(ExplainShapleyBasic<Rational>(instance->model, instance->x)
                .attribution.values,
            expected);
  EXPECT_EQ(ExplainShapleyFast<Rational>(instance->model, instance->x)
                .attribution.values,
            expected);
  const auto fast = ExplainShapleyFast<double>(instance->model, instance->x);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(fast.attribution.values[i], expected[i].get_d(), 1e-9);
  }
}

TEST(ExplainShapley, SparseDepthTen) {
  auto instance = GenerateSynthetic({SyntheticKind::kSparse, 10});
  ASSERT_TRUE(instance.ok());
  const auto fast = ExplainShapleyFast<double>(instance->model, instance->x);
  for (int i = 0; i < 9; ++i) {
    EXPECT_LE(std::fabs(fast.attribution.values[i]), 1e-9);
  }
  EXPECT_NEAR(fast.attribution.values[9], 388.5, 1e-9);
}

TEST(ExplainShapley, FastAgreesWithBasicOnRandomTrees) {
  std::mt19937_64 rng(2024);
  RandomEnsembleOptions options;
  options.min_trees = 1;
  options.max_trees = 1;
  options.max_leaves = 64;
  options.max_depth = 12;
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const TreeEnsemble model = RandomEnsemble(options, rng);
    ASSERT_LE(model.MaxDepth(), 12);
    const std::vector<double> x = RandomPoint(model.num_features, 8, rng);
    const auto basic = ExplainShapleyBasic<double>(model, x);
    const auto fast = ExplainShapleyFast<double>(model, x);
    for (int i = 0; i < model.num_features; ++i) {
      worst = std::max(worst, std::fabs(basic.attribution.values[i] -
                                        fast.attribution.values[i]));
    }
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(ExplainShapley, ExactOnRandomEnsembles) {
  std::mt19937_64 rng(77);
  RandomEnsembleOptions options;
  options.relevant_features = 2;  // many repeated features on each path
  for (int trial = 0; trial < 60; ++trial) {
    if (trial == 30) options.relevant_features = 8;
    const TreeEnsemble model = RandomEnsemble(options, rng);
    const std::vector<double> x = RandomPoint(model.num_features, 8, rng);
    auto oracle = OracleValues<Rational>(model, x, WeightScheme::Shapley());
    ASSERT_TRUE(oracle.ok());
    const auto basic = ExplainShapleyBasic<Rational>(model, x);
    const auto fast = ExplainShapleyFast<Rational>(model, x);
    EXPECT_EQ(basic.attribution.values, oracle->values) << trial;
    EXPECT_EQ(fast.attribution.values, oracle->values) << trial;
    EXPECT_EQ(fast.attribution.expected_value, oracle->expected_value);
  }
}

TEST(ExplainShapley, Efficiency) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const TreeEnsemble model = RandomEnsemble({}, rng);
    const std::vector<double> x = RandomPoint(model.num_features, 8, rng);
    const double gap = Predict(model, x) - ExpectedValue<double>(model);
    for (const auto& result : {ExplainShapleyBasic<double>(model, x),
                               ExplainShapleyFast<double>(model, x)}) {
      double sum = 0;
      for (const double value : result.attribution.values) sum += value;
      EXPECT_NEAR(sum, gap, 1e-9);
    }
  }
}

TEST(ExplainShapley, OpCountScaling) {
  // Fast: add + del per leaf per depth stays bounded; basic grows with D.
  double fast_min = 1e300, fast_max = 0, basic_min = 1e300, basic_max = 0;
  for (const int d : {10, 20, 40, 80}) {
    auto instance = GenerateSynthetic({SyntheticKind::kSparse, d});
    ASSERT_TRUE(instance.ok());
    const double ld = static_cast<double>(instance->model.TotalLeaves()) * d;
    const auto fast = ExplainShapleyFast<double>(instance->model, instance->x);
    const auto basic = ExplainShapleyBasic<double>(instance->model, instance->x);
    const double f = (fast.ops.add_count + fast.ops.del_count) / ld;
    const double b = (basic.ops.add_count + basic.ops.del_count) / (ld * d);
    fast_min = std::min(fast_min, f);
    fast_max = std::max(fast_max, f);
    basic_min = std::min(basic_min, b);
    basic_max = std::max(basic_max, b);
  }
  EXPECT_LE(fast_max / fast_min, 1.5);
  EXPECT_LE(basic_max / basic_min, 2.0);
}

}  // namespace
}  // namespace treeattr
