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


#include "treeattr/commands.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <random>
#include <string_view>
#include <thread>
#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "treeattr/analysis.h"
#include "treeattr/explain.h"
#include "treeattr/io.h"
#include "treeattr/model.h"
#include "treeattr/pathdep.h"
#include "treeattr/synth.h"

namespace treeattr {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kTolerance = 1e-9;

constexpr Method kAlgorithms[] = {Method::kShapleyBasic, Method::kShapleyFast,
                                  Method::kBanzhafBasic, Method::kBanzhafFast};

int Fail(std::ostream& err, int code, const std::string& message) {
  err << "error: " << message << "\n";
  return code;
}

int FailStatus(std::ostream& err, const absl::Status& status) {
  const int code = status.code() == absl::StatusCode::kOutOfRange
                       ? kExitOracleCap
                       : kExitInvalidInput;
  return Fail(err, code, std::string(status.message()));
}

int Emit(const RunConfig& config, std::string_view text, std::ostream& out,
         std::ostream& err) {
  if (config.output_path.empty()) {
    out << text;
    return kExitOk;
  }
  if (absl::Status s = WriteFile(config.output_path, text); !s.ok()) {
    return FailStatus(err, s);
  }
  return kExitOk;
}

absl::StatusOr<std::vector<Method>> ParseMethods(
    const std::vector<std::string>& names, std::span<const Method> fallback) {
  if (names.empty()) return std::vector<Method>(fallback.begin(), fallback.end());
  std::vector<Method> methods;
  for (const std::string& name : names) {
    const std::optional<Method> method = ParseMethod(name);
    if (!method) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown method '", name, "'"));
    }
    methods.push_back(*method);
  }
  return methods;
}

// Runs fn(i) for i in [0, count) on up to `threads` threads, each taking a
// contiguous block. Results are indexed by i, so the output does not depend
// on the thread count.
template <typename Fn>
void ParallelFor(std::size_t count, int threads, Fn fn) {
  const std::size_t workers =
      std::clamp<std::size_t>(threads < 1 ? 1 : threads, 1,
                              std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t block = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(count, begin + block);
    pool.emplace_back([begin, end, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (std::thread& thread : pool) thread.join();
}

absl::Status FirstError(const std::vector<absl::Status>& statuses) {
  for (std::size_t i = 0; i < statuses.size(); ++i) {
    if (!statuses[i].ok()) {
      return absl::Status(statuses[i].code(),
                          absl::StrCat("row ", i, ": ", statuses[i].message()));
    }
  }
  return absl::OkStatus();
}

// Loads model and dataset; on failure sets *exit_code.
struct Inputs {
  TreeEnsemble model;
  Dataset data;
};

std::optional<Inputs> LoadInputs(const RunConfig& config, std::ostream& err,
                                 int* exit_code) {
  if (config.model_path.empty()) {
    *exit_code = Fail(err, kExitInvalidInput, "--model is required");
    return std::nullopt;
  }
  if (config.data_path.empty()) {
    *exit_code = Fail(err, kExitInvalidInput, "--data is required");
    return std::nullopt;
  }
  auto model = LoadModel(config.model_path);
  if (!model.ok()) {
    *exit_code = Fail(err, kExitInvalidInput, std::string(model.status().message()));
    return std::nullopt;
  }
  auto data = LoadDataset(config.data_path);
  if (!data.ok()) {
    *exit_code = Fail(err, kExitInvalidInput, std::string(data.status().message()));
    return std::nullopt;
  }
  if (data->num_features != model->num_features) {
    *exit_code = Fail(
        err, kExitDimensionMismatch,
        absl::StrCat("dataset ", config.data_path, " has ", data->num_features,
                     " features but the model expects ", model->num_features));
    return std::nullopt;
  }
  return Inputs{*std::move(model), *std::move(data)};
}

absl::Status CheckMode(const TreeEnsemble& model, NumericMode mode) {
  if (mode == NumericMode::kRational && !HasIntegerCoverages(model)) {
    return absl::InvalidArgumentError(
        "--mode rational needs integer coverages in the model");
  }
  return absl::OkStatus();
}

absl::StatusOr<SyntheticKind> ParseKind(const std::string& kind) {
  if (kind == "dense") return SyntheticKind::kDense;
  if (kind == "sparse") return SyntheticKind::kSparse;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown kind '", kind, "' (dense or sparse)"));
}

// ---------------------------------------------------------------- verify

struct MethodCheck {
  double max_relative_error = 0;
  double max_efficiency_gap = 0;
  bool efficiency_exact = true;
};

struct RowCheck {
  std::vector<MethodCheck> methods;
  double max_dead_attribution = 0;
};

// max_j |a_j - o_j| / max_j |o_j|, or the absolute difference when the
// oracle is all zero.
template <typename Real>
Real NormwiseError(const std::vector<Real>& computed,
                   const std::vector<Real>& oracle) {
  Real diff(0);
  Real scale(0);
  for (std::size_t j = 0; j < oracle.size(); ++j) {
    diff = std::max(diff, Real(Abs(Real(computed[j] - oracle[j]))));
    scale = std::max(scale, Real(Abs(oracle[j])));
  }
  if (scale == Real(0)) return diff;
  return diff / scale;
}

template <typename Real>
absl::StatusOr<RowCheck> CheckRow(const TreeEnsemble& model,
                                  std::span<const double> x,
                                  std::span<const Method> methods,
                                  const std::vector<int>& dead,
                                  const SubsetTable<Real>& table) {
  auto shapley = ValuesFromTable(table, WeightScheme::Shapley());
  if (!shapley.ok()) return shapley.status();
  auto banzhaf = ValuesFromTable(table, WeightScheme::Banzhaf());
  if (!banzhaf.ok()) return banzhaf.status();
  // g(all relevant) is the prediction.
  const Real gap_target = table.g.back() - table.g.front();

  RowCheck row;
  for (const Method method : methods) {
    auto explanation = Explain<Real>(model, x, method);
    if (!explanation.ok()) return explanation.status();
    const std::vector<Real>& values = explanation->attribution.values;
    const std::vector<Real>& oracle =
        IsShapley(method) ? shapley->values : banzhaf->values;
    MethodCheck check;
    check.max_relative_error = ToDouble(NormwiseError(values, oracle));
    Real sum(0);
    for (const Real& value : values) sum += value;
    const Real gap = Abs(Real(sum - gap_target));
    check.max_efficiency_gap = ToDouble(gap);
    check.efficiency_exact = gap == Real(0);
    row.methods.push_back(check);
    for (const int feature : dead) {
      row.max_dead_attribution = std::max(
          row.max_dead_attribution, std::fabs(ToDouble(values[feature])));
    }
  }
  return row;
}

// Float algorithms against the exact oracle: the oracle is rounded once.
absl::StatusOr<RowCheck> CheckRowMixed(const TreeEnsemble& model,
                                       std::span<const double> x,
                                       std::span<const Method> methods,
                                       const std::vector<int>& dead,
                                       const SubsetTable<Rational>& exact) {
  auto shapley = ValuesFromTable(exact, WeightScheme::Shapley());
  if (!shapley.ok()) return shapley.status();
  auto banzhaf = ValuesFromTable(exact, WeightScheme::Banzhaf());
  if (!banzhaf.ok()) return banzhaf.status();
  const std::vector<double> shapley_values = ToDouble(*shapley).values;
  const std::vector<double> banzhaf_values = ToDouble(*banzhaf).values;
  const double gap_target = Rational(exact.g.back() - exact.g.front()).get_d();

  RowCheck row;
  for (const Method method : methods) {
    auto explanation = Explain<double>(model, x, method);
    if (!explanation.ok()) return explanation.status();
    const std::vector<double>& values = explanation->attribution.values;
    MethodCheck check;
    check.max_relative_error = NormwiseError(
        values, IsShapley(method) ? shapley_values : banzhaf_values);
    double sum = 0;
    for (const double value : values) sum += value;
    check.max_efficiency_gap = std::fabs(sum - gap_target);
    check.efficiency_exact = false;
    row.methods.push_back(check);
    for (const int feature : dead) {
      row.max_dead_attribution =
          std::max(row.max_dead_attribution, std::fabs(values[feature]));
    }
  }
  return row;
}

}  // namespace

int RunExplain(const RunConfig& config, std::ostream& out, std::ostream& err) {
  int exit_code = kExitOk;
  auto inputs = LoadInputs(config, err, &exit_code);
  if (!inputs) return exit_code;
  auto methods = ParseMethods(config.methods, {{Method::kShapleyFast}});
  if (!methods.ok()) return FailStatus(err, methods.status());
  if (methods->size() != 1) {
    return Fail(err, kExitInvalidInput, "explain takes exactly one method");
  }
  if (absl::Status s = CheckMode(inputs->model, config.mode); !s.ok()) {
    return FailStatus(err, s);
  }

  const std::size_t rows = inputs->data.rows.size();
  std::vector<Attribution> results(rows);
  std::vector<absl::Status> statuses(rows);
  ParallelFor(rows, config.threads, [&](std::size_t i) {
    auto explanation = ExplainInMode(inputs->model, inputs->data.rows[i],
                                     methods->front(), config.mode);
    if (!explanation.ok()) {
      statuses[i] = explanation.status();
      return;
    }
    results[i] = std::move(explanation->attribution);
  });
  if (absl::Status s = FirstError(statuses); !s.ok()) return FailStatus(err, s);
  return Emit(config, AttributionCsv(results, inputs->model.num_features), out,
              err);
}

int RunVerify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  TreeEnsemble model;
  std::string model_label;
  std::mt19937_64 rng(config.seed);
  if (config.model_path.empty()) {
    RandomEnsembleOptions options;
    options.min_trees = 3;
    options.max_trees = 3;
    options.max_leaves = 16;
    options.relevant_features = 8;
    model = RandomEnsemble(options, rng);
    model_label = absl::StrCat("random(seed=", config.seed, ")");
  } else {
    auto loaded = LoadModel(config.model_path);
    if (!loaded.ok()) return FailStatus(err, loaded.status());
    model = *std::move(loaded);
    model_label = config.model_path;
  }

  Dataset data;
  if (config.data_path.empty()) {
    data.num_features = model.num_features;
    for (int i = 0; i < 20; ++i) {
      data.rows.push_back(RandomPoint(model.num_features, 8, rng));
    }
  } else {
    auto loaded = LoadDataset(config.data_path);
    if (!loaded.ok()) return FailStatus(err, loaded.status());
    data = *std::move(loaded);
    if (data.num_features != model.num_features) {
      return Fail(err, kExitDimensionMismatch,
                  absl::StrCat("dataset has ", data.num_features,
                               " features but the model expects ",
                               model.num_features));
    }
  }

  auto methods = ParseMethods(config.methods, kAlgorithms);
  if (!methods.ok()) return FailStatus(err, methods.status());
  for (const Method method : *methods) {
    if (method == Method::kOracleShapley || method == Method::kOracleBanzhaf) {
      return Fail(err, kExitInvalidInput,
                  "verify compares algorithms against the oracles; pass "
                  "algorithm names only");
    }
  }
  if (absl::Status s = CheckMode(model, config.mode); !s.ok()) {
    return FailStatus(err, s);
  }

  const std::vector<int> relevant = RelevantFeatures(model);
  if (static_cast<int>(relevant.size()) > kOracleMaxFeatures) {
    return Fail(err, kExitOracleCap,
                absl::StrCat("the model uses ", relevant.size(),
                             " features; the oracle enumerates at most ",
                             kOracleMaxFeatures,
                             ". Verify a smaller model or one with fewer "
                             "distinct split features."));
  }
  std::vector<int> dead;
  for (int f = 0; f < model.num_features; ++f) {
    if (!std::binary_search(relevant.begin(), relevant.end(), f)) {
      dead.push_back(f);
    }
  }
  const bool exact_oracle = HasIntegerCoverages(model);
  const bool exact_algorithms = config.mode == NumericMode::kRational;

  const std::size_t rows = data.rows.size();
  std::vector<RowCheck> checks(rows);
  std::vector<absl::Status> statuses(rows);
  ParallelFor(rows, config.threads, [&](std::size_t i) {
    const std::vector<double>& x = data.rows[i];
    absl::StatusOr<RowCheck> check;
    if (exact_oracle) {
      auto table = EvalAllSubsets<Rational>(model, x);
      if (!table.ok()) {
        statuses[i] = table.status();
        return;
      }
      check = exact_algorithms
                  ? CheckRow<Rational>(model, x, *methods, dead, *table)
                  : CheckRowMixed(model, x, *methods, dead, *table);
    } else {
      auto table = EvalAllSubsets<double>(model, x);
      if (!table.ok()) {
        statuses[i] = table.status();
        return;
      }
      check = CheckRow<double>(model, x, *methods, dead, *table);
    }
    if (!check.ok()) {
      statuses[i] = check.status();
      return;
    }
    checks[i] = *std::move(check);
  });
  if (absl::Status s = FirstError(statuses); !s.ok()) return FailStatus(err, s);

  Json report;
  report["model"] = model_label;
  report["rows"] = rows;
  report["mode"] = exact_algorithms ? "rational" : "float64";
  report["oracle_mode"] = exact_oracle ? "rational" : "float64";
  report["tolerance"] = kTolerance;
  bool pass = true;
  Json accuracy = Json::object();
  Json efficiency = Json::object();
  double dead_max = 0;
  for (std::size_t m = 0; m < methods->size(); ++m) {
    MethodCheck total;
    for (const RowCheck& row : checks) {
      const MethodCheck& c = row.methods[m];
      total.max_relative_error =
          std::max(total.max_relative_error, c.max_relative_error);
      total.max_efficiency_gap =
          std::max(total.max_efficiency_gap, c.max_efficiency_gap);
      total.efficiency_exact = total.efficiency_exact && c.efficiency_exact;
    }
    const Method method = (*methods)[m];
    const bool accurate = total.max_relative_error <= kTolerance;
    const bool holds = exact_algorithms ? total.efficiency_exact
                                        : total.max_efficiency_gap <= kTolerance;
    const std::string name(MethodName(method));
    accuracy[name] = {{"max_relative_error", total.max_relative_error},
                      {"pass", accurate}};
    efficiency[name] = {{"max_abs_gap", total.max_efficiency_gap},
                        {"status", holds ? "holds" : "violated"},
                        {"required", IsShapley(method)}};
    pass = pass && accurate && (holds || !IsShapley(method));
  }
  for (const RowCheck& row : checks) {
    dead_max = std::max(dead_max, row.max_dead_attribution);
  }
  report["accuracy"] = accuracy;
  report["efficiency"] = efficiency;
  report["sensitivity"] = {
      {"unused_features", dead},
      {"max_abs_attribution", dead_max},
      {"status", dead_max == 0 ? "exact zero" : "nonzero"}};
  pass = pass && dead_max == 0;
  report["pass"] = pass;

  const int emitted = Emit(config, report.dump(2) + "\n", out, err);
  if (emitted != kExitOk) return emitted;
  if (!pass) return Fail(err, kExitInvalidInput, "verification failed");
  return kExitOk;
}

int RunBench(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.repeats < 1) {
    return Fail(err, kExitInvalidInput,
                absl::StrCat("--repeats must be at least 1, got ",
                             config.repeats));
  }
  auto methods = ParseMethods(config.methods, kAlgorithms);
  if (!methods.ok()) return FailStatus(err, methods.status());

  struct Case {
    TreeEnsemble model;
    std::vector<std::vector<double>> points;
  };
  std::vector<Case> cases;
  if (!config.model_path.empty()) {
    int exit_code = kExitOk;
    auto inputs = LoadInputs(config, err, &exit_code);
    if (!inputs) return exit_code;
    cases.push_back({std::move(inputs->model), std::move(inputs->data.rows)});
  } else {
    auto kind = ParseKind(config.kind);
    if (!kind.ok()) return FailStatus(err, kind.status());
    const std::vector<int> depths =
        config.depths.empty() ? std::vector<int>{10, 20, 40} : config.depths;
    for (const int d : depths) {
      auto instance = GenerateSynthetic({*kind, d});
      if (!instance.ok()) return FailStatus(err, instance.status());
      cases.push_back({std::move(instance->model), {std::move(instance->x)}});
    }
  }

  std::string csv = "method,depth,L,wall_ns,add_ops,del_ops,scale_ops\n";
  for (const Case& c : cases) {
    if (absl::Status s = CheckMode(c.model, config.mode); !s.ok()) {
      return FailStatus(err, s);
    }
    for (const Method method : *methods) {
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      OpCounter ops;
      for (int r = 0; r < config.repeats; ++r) {
        OpCounter run_ops;
        const auto start = std::chrono::steady_clock::now();
        for (const auto& x : c.points) {
          auto explanation = ExplainInMode(c.model, x, method, config.mode);
          if (!explanation.ok()) return FailStatus(err, explanation.status());
          run_ops += explanation->ops;
        }
        const auto elapsed = std::chrono::steady_clock::now() - start;
        best = std::min<std::int64_t>(
            best,
            std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed)
                .count());
        ops = run_ops;
      }
      absl::StrAppend(&csv, std::string(MethodName(method)), ",", c.model.MaxDepth(), ",",
                      c.model.TotalLeaves(), ",", best, ",", ops.add_count,
                      ",", ops.del_count, ",", ops.scale_count, "\n");
    }
  }
  return Emit(config, csv, out, err);
}

int RunCompare(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.inputs.size() != 2) {
    return Fail(err, kExitInvalidInput,
                "compare needs exactly two attribution CSV files");
  }
  AttributionTable tables[2];
  for (int t = 0; t < 2; ++t) {
    auto text = ReadFile(config.inputs[t]);
    if (!text.ok()) return FailStatus(err, text.status());
    auto table = ParseAttributionCsv(*text, config.inputs[t]);
    if (!table.ok()) {
      return Fail(err, kExitInvalidInput,
                  absl::StrCat(config.inputs[t], ": ",
                               table.status().message()));
    }
    tables[t] = *std::move(table);
  }
  const AttributionTable& a = tables[0];
  const AttributionTable& b = tables[1];
  if (a.num_features != b.num_features || a.rows.size() != b.rows.size()) {
    return Fail(err, kExitDimensionMismatch,
                absl::StrCat("tables differ in shape: ", a.rows.size(), "x",
                             a.num_features, " vs ", b.rows.size(), "x",
                             b.num_features));
  }
  if (a.rows.empty()) return Fail(err, kExitInvalidInput, "tables are empty");

  std::vector<int> top_n = config.top_n;
  if (top_n.empty()) {
    for (const int n : {1, 3, 5}) {
      if (n <= a.num_features) top_n.push_back(n);
    }
  }
  auto impact_a = GlobalImpact(a);
  auto impact_b = GlobalImpact(b);
  auto metrics = CompareTables(a, b);
  if (!impact_a.ok()) return FailStatus(err, impact_a.status());
  if (!impact_b.ok()) return FailStatus(err, impact_b.status());
  if (!metrics.ok()) return FailStatus(err, metrics.status());

  Json report;
  report["a"] = config.inputs[0];
  report["b"] = config.inputs[1];
  report["rows"] = a.rows.size();
  report["num_features"] = a.num_features;
  report["global_impact"] = {{"a", *impact_a}, {"b", *impact_b}};
  report["global_ranking"] = {{"a", RankFeatures(*impact_a)},
                              {"b", RankFeatures(*impact_b)}};
  report["mae"] = metrics->mae;
  report["rmse"] = metrics->rmse;
  Json cayley = Json::array();
  std::string cayley_csv = "top_n,mean_cayley,global_cayley\n";
  for (const int n : top_n) {
    auto mean = MeanModifiedCayley(a, b, n);
    if (!mean.ok()) return FailStatus(err, mean.status());
    auto global = ModifiedCayley(*impact_a, *impact_b, n);
    if (!global.ok()) return FailStatus(err, global.status());
    cayley.push_back(
        {{"top_n", n}, {"mean_cayley", *mean}, {"global_cayley", *global}});
    absl::StrAppend(&cayley_csv, n, ",", FormatDouble(*mean), ",", *global,
                    "\n");
  }
  report["cayley"] = cayley;

  const int emitted = Emit(config, report.dump(2) + "\n", out, err);
  if (emitted != kExitOk || config.output_path.empty()) return emitted;
  std::string features_csv = "feature,impact_a,impact_b,mae,rmse\n";
  for (int i = 0; i < a.num_features; ++i) {
    absl::StrAppend(&features_csv, i, ",", FormatDouble((*impact_a)[i]), ",",
                    FormatDouble((*impact_b)[i]), ",",
                    FormatDouble(metrics->mae[i]), ",",
                    FormatDouble(metrics->rmse[i]), "\n");
  }
  for (const auto& [suffix, text] :
       {std::pair<std::string, const std::string*>{".features.csv",
                                                   &features_csv},
        {".cayley.csv", &cayley_csv}}) {
    if (absl::Status s = WriteFile(config.output_path + suffix, *text);
        !s.ok()) {
      return FailStatus(err, s);
    }
  }
  return kExitOk;
}

int RunHypercube(const RunConfig& config, std::ostream& out,
                 std::ostream& err) {
  HypercubeFunction f;
  if (!config.function_path.empty()) {
    auto text = ReadFile(config.function_path);
    if (!text.ok()) return FailStatus(err, text.status());
    try {
      const Json doc = Json::parse(*text);
      f.table = doc.at("table").get<std::vector<double>>();
      f.k = doc.contains("k") ? doc.at("k").get<int>() : -1;
    } catch (const Json::exception& e) {
      return Fail(err, kExitInvalidInput,
                  absl::StrCat(config.function_path, ": ", e.what()));
    }
  } else {
    f.table = config.table;
    f.k = -1;
  }
  if (config.k >= 0) f.k = config.k;
  if (f.table.empty()) {
    return Fail(err, kExitInvalidInput,
                "hypercube needs --function or --table");
  }
  if (f.k < 0) {
    // Infer k from the table length.
    const std::size_t size = f.table.size();
    f.k = std::countr_zero(size);
    if ((std::size_t{1} << f.k) != size) {
      return Fail(err, kExitDimensionMismatch,
                  absl::StrCat("table length ", size, " is not a power of 2"));
    }
  }
  if (f.k > kMaxHypercubeDim ||
      f.table.size() != (std::size_t{1} << std::max(f.k, 0))) {
    return Fail(err, kExitDimensionMismatch,
                absl::StrCat("table has ", f.table.size(),
                             " entries; k = ", f.k, " needs 2^k"));
  }
  if (f.k > kMaxBruteForceDim) {
    return Fail(err, kExitInvalidInput,
                absl::StrCat("k = ", f.k, " exceeds the brute-force limit ",
                             kMaxBruteForceDim));
  }
  if (config.random_schemes < 0) {
    return Fail(err, kExitInvalidInput, "--random-schemes must be >= 0");
  }

  std::vector<std::pair<std::string, WeightScheme>> schemes = {
      {"shapley", WeightScheme::Shapley()}, {"banzhaf", WeightScheme::Banzhaf()}};
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  for (int s = 0; s < config.random_schemes && f.k > 0; ++s) {
    // Positive per-size weights scaled so that they sum to 1 over subsets.
    std::vector<double> per_size(f.k);
    double total = 0;
    double binomial = 1;
    for (int size = 0; size < f.k; ++size) {
      per_size[size] = unit(rng);
      total += per_size[size] * binomial;
      binomial = binomial * (f.k - 1 - size) / (size + 1);
    }
    for (double& w : per_size) w /= total;
    schemes.emplace_back(absl::StrCat("random_", s),
                         WeightScheme::Custom(std::move(per_size)));
  }

  const std::vector<double> closed_form = FlipImpacts(f);
  const std::vector<bool> monotone = IsMonotone(f);
  Json impacts = Json::object();
  std::vector<std::vector<double>> all;
  for (const auto& [name, scheme] : schemes) {
    auto omega = HypercubeImpacts(f, scheme);
    if (!omega.ok()) return FailStatus(err, omega.status());
    impacts[name] = *omega;
    all.push_back(*std::move(omega));
  }
  double cross = 0;
  double to_closed_form = 0;
  for (const auto& omega : all) {
    for (int i = 0; i < f.k; ++i) {
      to_closed_form =
          std::max(to_closed_form, std::fabs(omega[i] - closed_form[i]));
      for (const auto& other : all) {
        cross = std::max(cross, std::fabs(omega[i] - other[i]));
      }
    }
  }
  const bool all_monotone =
      std::all_of(monotone.begin(), monotone.end(), [](bool b) { return b; });

  Json report;
  report["k"] = f.k;
  report["monotone"] = monotone;
  report["all_monotone"] = all_monotone;
  report["closed_form"] = closed_form;
  report["impacts"] = impacts;
  report["max_cross_scheme_deviation"] = cross;
  report["max_closed_form_deviation"] = to_closed_form;
  report["weight_independent"] = cross <= kTolerance;
  return Emit(config, report.dump(2) + "\n", out, err);
}

int RunSynth(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto kind = ParseKind(config.kind);
  if (!kind.ok()) return FailStatus(err, kind.status());
  if (config.depths.size() != 1) {
    return Fail(err, kExitInvalidInput, "synth takes exactly one --depth");
  }
  auto instance = GenerateSynthetic({*kind, config.depths.front()});
  if (!instance.ok()) return FailStatus(err, instance.status());

  const std::filesystem::path dir =
      config.output_path.empty() ? "." : config.output_path;
  std::error_code error;
  std::filesystem::create_directories(dir, error);
  if (error) {
    return Fail(err, kExitInvalidInput,
                absl::StrCat("cannot create ", dir.string(), ": ",
                             error.message()));
  }

  Json values = Json::object();
  for (std::size_t i = 0; i < instance->exact.values.size(); ++i) {
    values[absl::StrCat("f", i)] = ToString(instance->exact.values[i]);
  }
  Json exact;
  exact["kind"] = std::string(SyntheticKindName(*kind));
  exact["d"] = config.depths.front();
  exact["methods"] = {"shapley", "banzhaf"};
  exact["expected_value"] = ToString(instance->exact.expected_value);
  exact["values"] = values;

  Dataset data;
  data.num_features = instance->model.num_features;
  data.rows.push_back(instance->x);
  const std::pair<std::string, std::string> files[] = {
      {"model.json", ModelToJson(instance->model)},
      {"data.csv", DatasetToCsv(data)},
      {"exact.json", exact.dump(2) + "\n"}};
  for (const auto& [name, text] : files) {
    const std::string path = (dir / name).string();
    if (absl::Status s = WriteFile(path, text); !s.ok()) {
      return FailStatus(err, s);
    }
    out << path << "\n";
  }
  return kExitOk;
}

}  // namespace treeattr
