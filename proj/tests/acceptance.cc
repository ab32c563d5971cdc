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


// End-to-end acceptance checks. Prints one PASS/FAIL line per check and
// exits non-zero if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "treeattr/analysis.h"
#include "treeattr/banzhaf.h"
#include "treeattr/commands.h"
#include "treeattr/io.h"
#include "treeattr/model.h"
#include "treeattr/pathdep.h"
#include "treeattr/shapley.h"
#include "treeattr/synth.h"

namespace treeattr {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// max_j |a_j - o_j| / max_j |o_j|, absolute when the reference is zero.
double NormwiseError(const std::vector<double>& a,
                     const std::vector<Rational>& o) {
  double diff = 0, scale = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double exact = o[j].get_d();
    diff = std::max(diff, std::fabs(a[j] - exact));
    scale = std::max(scale, std::fabs(exact));
  }
  return scale == 0 ? diff : diff / scale;
}

double MaxAbsDiff(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    diff = std::max(diff, std::fabs(a[j] - b[j]));
  }
  return diff;
}

template <typename Real>
Real Sum(const std::vector<Real>& values) {
  Real total(0);
  for (const Real& v : values) total += v;
  return total;
}

struct Instance {
  TreeEnsemble model;
  std::vector<std::vector<double>> points;
  std::vector<int> dead;
};

constexpr int kDeadFeatures = 2;

std::vector<Instance> MakeSuite() {
  std::mt19937_64 rng(20260101);
  RandomEnsembleOptions options;
  options.max_trees = 5;
  options.max_leaves = 32;
  options.relevant_features = 10;
  options.dead_features = kDeadFeatures;
  options.integer_coverages = true;
  std::vector<Instance> suite;
  for (int e = 0; e < 500; ++e) {
    Instance instance;
    instance.model = RandomEnsemble(options, rng);
    for (int p = 0; p < 20; ++p) {
      instance.points.push_back(
          RandomPoint(instance.model.num_features, options.threshold_levels,
                      rng));
    }
    std::vector<char> used(instance.model.num_features, 0);
    for (const int f : RelevantFeatures(instance.model)) used[f] = 1;
    for (int f = 0; f < instance.model.num_features; ++f) {
      if (!used[f]) instance.dead.push_back(f);
    }
    suite.push_back(std::move(instance));
  }
  return suite;
}

struct FloatStats {
  double oracle_error[4] = {0, 0, 0, 0};
  double shapley_pair = 0;
  double banzhaf_pair = 0;
  double efficiency_gap = 0;
  double dead_max = 0;
  int points = 0;
  double seconds = 0;
  bool ok = true;
};

// Float algorithms against the rational oracle, one subset table per point.
FloatStats RunFloatSuite(const std::vector<Instance>& suite) {
  FloatStats stats;
  const auto start = Clock::now();
  for (const Instance& instance : suite) {
    for (const auto& x : instance.points) {
      auto table = EvalAllSubsets<Rational>(instance.model, x);
      if (!table.ok()) {
        stats.ok = false;
        continue;
      }
      const auto shapley = ValuesFromTable(*table, WeightScheme::Shapley());
      const auto banzhaf = ValuesFromTable(*table, WeightScheme::Banzhaf());
      const std::vector<double> values[4] = {
          ExplainShapleyBasic<double>(instance.model, x).attribution.values,
          ExplainShapleyFast<double>(instance.model, x).attribution.values,
          ExplainBanzhafBasic<double>(instance.model, x).attribution.values,
          ExplainBanzhafFast<double>(instance.model, x).attribution.values};
      for (int m = 0; m < 4; ++m) {
        const auto& oracle = m < 2 ? shapley->values : banzhaf->values;
        stats.oracle_error[m] =
            std::max(stats.oracle_error[m], NormwiseError(values[m], oracle));
        for (const int f : instance.dead) {
          stats.dead_max = std::max(stats.dead_max, std::fabs(values[m][f]));
        }
      }
      for (const int f : instance.dead) {
        for (const auto* oracle : {&shapley->values, &banzhaf->values}) {
          stats.dead_max =
              std::max(stats.dead_max, std::fabs((*oracle)[f].get_d()));
        }
      }
      stats.shapley_pair =
          std::max(stats.shapley_pair, MaxAbsDiff(values[0], values[1]));
      stats.banzhaf_pair =
          std::max(stats.banzhaf_pair, MaxAbsDiff(values[2], values[3]));
      const double target =
          Predict(instance.model, x) - ExpectedValue<double>(instance.model);
      for (int m = 0; m < 2; ++m) {
        stats.efficiency_gap =
            std::max(stats.efficiency_gap, std::fabs(Sum(values[m]) - target));
      }
      ++stats.points;
    }
  }
  stats.seconds = Seconds(start);
  return stats;
}

struct ExactStats {
  int efficiency_failures = 0;
  int dead_failures = 0;
  double seconds = 0;
};

ExactStats RunExactSuite(const std::vector<Instance>& suite) {
  ExactStats stats;
  const auto start = Clock::now();
  for (const Instance& instance : suite) {
    const Rational expected = ExpectedValue<Rational>(instance.model);
    const Rational weight = instance.model.TreeWeight<Rational>();
    for (const auto& x : instance.points) {
      Rational prediction(0);
      for (const Tree& tree : instance.model.trees) {
        prediction += FromDouble<Rational>(PredictTree(tree, x));
      }
      const Rational target = prediction * weight - expected;
      const std::vector<Rational> values[4] = {
          ExplainShapleyBasic<Rational>(instance.model, x).attribution.values,
          ExplainShapleyFast<Rational>(instance.model, x).attribution.values,
          ExplainBanzhafBasic<Rational>(instance.model, x).attribution.values,
          ExplainBanzhafFast<Rational>(instance.model, x).attribution.values};
      for (int m = 0; m < 4; ++m) {
        if (m < 2 && Sum(values[m]) != target) ++stats.efficiency_failures;
        for (const int f : instance.dead) {
          if (values[m][f] != 0) ++stats.dead_failures;
        }
      }
    }
  }
  stats.seconds = Seconds(start);
  return stats;
}

std::string Sci(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3g", value);
  return buffer;
}

Outcome OracleEquivalence(const FloatStats& s) {
  Outcome out;
  const double worst =
      *std::max_element(std::begin(s.oracle_error), std::end(s.oracle_error));
  out.pass = s.ok && s.points == 10000 && worst <= 1e-9 && s.seconds < 120;
  out.detail = absl::StrCat(
      s.points, " points; max rel error shapley_basic ",
      Sci(s.oracle_error[0]), ", shapley_fast ", Sci(s.oracle_error[1]),
      ", banzhaf_basic ", Sci(s.oracle_error[2]), ", banzhaf_fast ",
      Sci(s.oracle_error[3]), "; ", Sci(s.seconds), " s");
  return out;
}

Outcome Consistency(const FloatStats& s) {
  return {s.shapley_pair <= 1e-9 && s.banzhaf_pair <= 1e-12,
          absl::StrCat("shapley basic/fast ", Sci(s.shapley_pair),
                       ", banzhaf basic/fast ", Sci(s.banzhaf_pair))};
}

Outcome Efficiency(const FloatStats& f, const ExactStats& e) {
  return {f.efficiency_gap <= 1e-9 && e.efficiency_failures == 0,
          absl::StrCat("rational mismatches ", e.efficiency_failures,
                       ", float max gap ", Sci(f.efficiency_gap), "; ",
                       Sci(e.seconds), " s rational")};
}

Outcome Sensitivity(const std::vector<Instance>& suite, const FloatStats& f,
                    const ExactStats& e) {
  std::size_t dead = 0;
  for (const Instance& instance : suite) dead += instance.dead.size();
  return {dead > 0 && f.dead_max == 0.0 && e.dead_failures == 0,
          absl::StrCat(dead, " unused feature slots; float max |phi| ",
                       Sci(f.dead_max), ", rational nonzero ",
                       e.dead_failures)};
}

Outcome SyntheticExactness() {
  Outcome out;
  int checked = 0;
  for (const SyntheticKind kind : {SyntheticKind::kDense, SyntheticKind::kSparse}) {
    for (int d = 2; d <= 12; ++d) {
      auto instance = GenerateSynthetic({kind, d});
      if (!instance.ok()) {
        out.pass = false;
        continue;
      }
      std::vector<Rational> expected(d, Rational(0));
      expected[d - 1] = Rational(777, 2);
      const std::vector<Rational> values[4] = {
          ExplainShapleyBasic<Rational>(instance->model, instance->x)
              .attribution.values,
          ExplainShapleyFast<Rational>(instance->model, instance->x)
              .attribution.values,
          ExplainBanzhafBasic<Rational>(instance->model, instance->x)
              .attribution.values,
          ExplainBanzhafFast<Rational>(instance->model, instance->x)
              .attribution.values};
      for (const auto& v : values) {
        if (v != expected) {
          out.pass = false;
          absl::StrAppend(&out.detail, std::string(SyntheticKindName(kind)), " d=", d,
                          " mismatch; ");
        }
        ++checked;
      }
    }
  }
  absl::StrAppend(&out.detail, checked, " runs, expected 777/2 on the root feature");
  return out;
}

Outcome NumericalBreakdown() {
  const auto start = Clock::now();
  const int depths[] = {10, 20, 30, 40, 45, 50, 55, 60};
  const Method methods[] = {Method::kShapleyBasic, Method::kShapleyFast,
                            Method::kBanzhafBasic, Method::kBanzhafFast};
  auto curve = ErrorCurve(SyntheticKind::kSparse, depths, methods);
  if (!curve.ok()) return {false, std::string(curve.status().message())};
  auto errors = [&](Method method) {
    std::vector<std::pair<int, double>> out;
    for (const ErrorCurvePoint& p : *curve) {
      if (p.method == method) out.emplace_back(p.depth, p.max_abs_error);
    }
    return out;
  };
  Outcome out;
  bool shapley_ok = false;
  for (const Method method : {Method::kShapleyBasic, Method::kShapleyFast}) {
    const auto e = errors(method);
    double peak = 0, at40 = 0, at60 = 0;
    bool increasing = true;
    double previous = -1;
    for (const auto& [depth, error] : e) {
      peak = std::max(peak, error);
      if (depth < 40) continue;
      if (depth == 40) at40 = error;
      if (depth == 60) at60 = error;
      if (!(error > previous)) increasing = false;
      previous = error;
    }
    const bool ok = peak >= 0.1 && increasing && at60 >= 10 * at40;
    shapley_ok = shapley_ok || ok;
    absl::StrAppend(&out.detail, std::string(MethodName(method)), " err(40)=", Sci(at40),
                    " err(60)=", Sci(at60), increasing ? " increasing" : "",
                    "; ");
  }
  double banzhaf = 0;
  for (const auto& [depth, error] : errors(Method::kBanzhafFast)) {
    banzhaf = std::max(banzhaf, error);
  }
  const double seconds = Seconds(start);
  out.pass = shapley_ok && banzhaf <= 1e-6 && seconds < 10;
  absl::StrAppend(&out.detail, "banzhaf_fast max ", Sci(banzhaf), "; ",
                  Sci(seconds), " s");
  return out;
}

Outcome ComplexityScaling() {
  const auto start = Clock::now();
  const int depths[] = {10, 20, 40, 80};
  struct Target {
    Method method;
    double ratio;
  };
  const Target targets[] = {{Method::kShapleyBasic, 8},
                            {Method::kShapleyFast, 4},
                            {Method::kBanzhafFast, 2}};
  Outcome out;
  for (const Target& target : targets) {
    std::vector<double> ops;
    for (const int d : depths) {
      auto instance = GenerateSynthetic({SyntheticKind::kSparse, d});
      OpCounter counter;
      switch (target.method) {
        case Method::kShapleyBasic:
          counter = ExplainShapleyBasic<double>(instance->model, instance->x).ops;
          break;
        case Method::kShapleyFast:
          counter = ExplainShapleyFast<double>(instance->model, instance->x).ops;
          break;
        default:
          counter = ExplainBanzhafFast<double>(instance->model, instance->x).ops;
      }
      ops.push_back(static_cast<double>(counter.total()));
    }
    absl::StrAppend(&out.detail, std::string(MethodName(target.method)), " ratios");
    for (std::size_t i = 1; i < ops.size(); ++i) {
      const double ratio = ops[i] / ops[i - 1];
      if (ratio < 0.7 * target.ratio || ratio > 1.3 * target.ratio) {
        out.pass = false;
      }
      absl::StrAppend(&out.detail, " ", Sci(ratio));
    }
    absl::StrAppend(&out.detail, "; ");
  }
  const double seconds = Seconds(start);
  out.pass = out.pass && seconds < 30;
  absl::StrAppend(&out.detail, Sci(seconds), " s");
  return out;
}

// Positive combination of monomials over possibly flipped inputs, plus a
// random threshold step on a weighted sum: monotone in every feature.
HypercubeFunction RandomMonotoneFunction(int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::uint32_t> mask(0, (1u << k) - 1);
  HypercubeFunction f;
  f.k = k;
  f.table.assign(1u << k, 0.0);
  const std::uint32_t flip = mask(rng);
  const int terms = 1 + static_cast<int>(rng() % 6);
  for (int t = 0; t < terms; ++t) {
    const std::uint32_t monomial = mask(rng);
    const double c = unit(rng);
    for (std::uint32_t x = 0; x < f.table.size(); ++x) {
      if (((x ^ flip) & monomial) == monomial) f.table[x] += c;
    }
  }
  std::vector<double> w(k);
  for (double& v : w) v = unit(rng);
  const double cut = unit(rng) * k / 2;
  const double height = unit(rng);
  for (std::uint32_t x = 0; x < f.table.size(); ++x) {
    double s = 0;
    for (int i = 0; i < k; ++i) {
      if (((x ^ flip) >> i) & 1u) s += w[i];
    }
    if (s >= cut) f.table[x] += height;
  }
  return f;
}

// Random per-size weights w_s > 0 with sum_s C(k-1, s) w_s = 1.
WeightScheme RandomPerSize(int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  std::vector<double> w(k);
  double total = 0, binomial = 1;
  for (int s = 0; s < k; ++s) {
    w[s] = unit(rng);
    total += binomial * w[s];
    binomial = binomial * (k - 1 - s) / (s + 1);
  }
  for (double& v : w) v /= total;
  return WeightScheme::Custom(std::move(w));
}

Outcome MonotoneWeightIndependence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(8);
  Outcome out;
  double cross = 0, closed = 0;
  int not_monotone = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + trial % 7;
    const HypercubeFunction f = RandomMonotoneFunction(k, rng);
    if (IsMonotone(f) != std::vector<bool>(k, true)) ++not_monotone;
    std::vector<WeightScheme> schemes = {WeightScheme::Shapley(),
                                         WeightScheme::Banzhaf()};
    for (int r = 0; r < 5; ++r) schemes.push_back(RandomPerSize(k, rng));
    std::vector<std::vector<double>> omegas;
    for (const WeightScheme& scheme : schemes) {
      auto omega = HypercubeImpacts(f, scheme);
      if (!omega.ok()) return {false, std::string(omega.status().message())};
      omegas.push_back(*std::move(omega));
    }
    const std::vector<double> flip = FlipImpacts(f);
    for (std::size_t a = 0; a < omegas.size(); ++a) {
      closed = std::max(closed, MaxAbsDiff(omegas[a], flip));
      for (std::size_t b = a + 1; b < omegas.size(); ++b) {
        cross = std::max(cross, MaxAbsDiff(omegas[a], omegas[b]));
      }
    }
  }
  const double seconds = Seconds(start);
  out.pass = not_monotone == 0 && cross <= 1e-9 && closed <= 1e-9 &&
             seconds < 60;
  out.detail = absl::StrCat("100 functions, 7 schemes; pairwise ", Sci(cross),
                            ", vs closed form ", Sci(closed), "; ",
                            Sci(seconds), " s");
  return out;
}

AttributionTable Table(std::vector<std::vector<double>> rows) {
  AttributionTable table;
  table.method = "t";
  table.num_features = static_cast<int>(rows.front().size());
  for (auto& values : rows) {
    Attribution row;
    row.values = std::move(values);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Outcome MetricExamples() {
  int failed = 0, checked = 0;
  auto check = [&](bool ok) {
    ++checked;
    if (!ok) ++failed;
  };
  using V = std::vector<double>;
  check(*GlobalImpact(Table({{1, -2, 0}})) == V{1, 2, 0});
  check(*GlobalImpact(Table({{1, 0}, {-1, 0}})) == V{2, 0});
  check(*GlobalImpact(Table({{0.5, 0.5}, {0.5, -1.5}})) == V{1.0, 2.0});
  check(!GlobalImpact(AttributionTable{"t", 2, {}}).ok());

  const auto same = CompareTables(Table({{1, -2}, {3, 4}}),
                                  Table({{1, -2}, {3, 4}}));
  check(same->mae == V{0, 0} && same->rmse == V{0, 0});
  const auto two = CompareTables(Table({{1}, {3}}), Table({{0}, {0}}));
  check(two->mae == V{2} && two->rmse == V{std::sqrt(5.0)});
  const auto one = CompareTables(Table({{2}}), Table({{-2}}));
  check(one->mae == V{4} && one->rmse == V{4});
  check(!CompareTables(Table({{1, 2}}), Table({{1}})).ok());

  // Features a, b, c, d are indices 0..3; |value| orders them.
  const V abc = {3, 2, 1, 0};
  check(*ModifiedCayley(abc, abc, 3) == 0);
  check(*ModifiedCayley(abc, V{2, 3, 1, 0}, 3) == 1);
  check(*ModifiedCayley(abc, V{3, 2, 0, 1}, 3) == 1);
  check(!ModifiedCayley(abc, V{1, 2}, 1).ok());
  check(!ModifiedCayley(abc, abc, 5).ok());

  HypercubeFunction constant{2, {4, 4, 4, 4}};
  check(*HypercubeImpacts(constant, WeightScheme::Shapley()) == V{0, 0});
  HypercubeFunction identity{1, {0, 1}};
  check(*HypercubeImpacts(identity, WeightScheme::Shapley()) == V{1});
  check(*HypercubeImpacts(identity, WeightScheme::Banzhaf()) == V{1});
  HypercubeFunction conjunction{2, {0, 0, 0, 1}};
  check(*HypercubeImpacts(conjunction, WeightScheme::Shapley()) ==
        *HypercubeImpacts(conjunction, WeightScheme::Banzhaf()));
  check(IsMonotone({3, {0, 1, 1, 1, 1, 1, 1, 1}}) == std::vector<bool>(3, true));
  check(IsMonotone({2, {0, 1, 1, 0}}) == std::vector<bool>(2, false));
  check(IsMonotone(constant) == std::vector<bool>(2, true));
  return {failed == 0,
          absl::StrCat(checked - failed, "/", checked, " examples exact")};
}

Outcome Determinism() {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "treeattr_acceptance";
  std::filesystem::create_directories(dir);
  std::mt19937_64 rng(10);
  RandomEnsembleOptions options;
  options.dead_features = 3;
  options.max_trees = 20;
  const TreeEnsemble model = RandomEnsemble(options, rng);
  Dataset data;
  data.num_features = model.num_features;
  for (int i = 0; i < 2000; ++i) {
    data.rows.push_back(RandomPoint(model.num_features, 8, rng));
  }
  RunConfig config;
  config.model_path = (dir / "model.json").string();
  config.data_path = (dir / "data.csv").string();
  if (!WriteFile(config.model_path, ModelToJson(model)).ok() ||
      !WriteFile(config.data_path, DatasetToCsv(data)).ok()) {
    return {false, "cannot write temp files"};
  }
  Outcome out;
  std::size_t bytes = 0;
  for (const char* method : {"shapley_fast", "shapley_basic", "banzhaf_fast"}) {
    config.methods = {method};
    std::string outputs[2];
    const int threads[2] = {1, 8};
    for (int t = 0; t < 2; ++t) {
      config.threads = threads[t];
      std::ostringstream stream, err;
      if (RunExplain(config, stream, err) != kExitOk) {
        out.pass = false;
        absl::StrAppend(&out.detail, err.str());
      }
      outputs[t] = stream.str();
    }
    if (outputs[0] != outputs[1] || outputs[0].empty()) out.pass = false;
    bytes += outputs[0].size();
  }
  std::filesystem::remove_all(dir);
  absl::StrAppend(&out.detail, "3 methods x 2000 rows, threads 1 vs 8, ",
                  bytes, " bytes compared");
  return out;
}

int Main() {
  int failures = 0;
  auto report = [&](const char* name, const Outcome& outcome) {
    std::printf("%s %s: %s\n", outcome.pass ? "PASS" : "FAIL", name,
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  };

  const std::vector<Instance> suite = MakeSuite();
  const FloatStats float_stats = RunFloatSuite(suite);
  report("oracle_equivalence", OracleEquivalence(float_stats));
  report("basic_fast_consistency", Consistency(float_stats));
  const ExactStats exact_stats = RunExactSuite(suite);
  report("efficiency", Efficiency(float_stats, exact_stats));
  report("unused_feature_sensitivity",
         Sensitivity(suite, float_stats, exact_stats));
  report("synthetic_exactness", SyntheticExactness());
  report("numerical_breakdown", NumericalBreakdown());
  report("operation_scaling", ComplexityScaling());
  report("monotone_hypercube", MonotoneWeightIndependence());
  report("metric_examples", MetricExamples());
  report("thread_determinism", Determinism());
  std::printf("%d of 10 checks passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace treeattr

int main() { return treeattr::Main(); }
