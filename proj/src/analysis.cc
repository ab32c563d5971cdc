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


#include "treeattr/analysis.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"

namespace treeattr {
namespace {

absl::Status CheckSameShape(const AttributionTable& a,
                            const AttributionTable& b) {
  if (absl::Status s = ValidateTable(a); !s.ok()) return s;
  if (absl::Status s = ValidateTable(b); !s.ok()) return s;
  if (a.num_features != b.num_features || a.rows.size() != b.rows.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "table shapes differ: ", a.rows.size(), "x", a.num_features, " vs ",
        b.rows.size(), "x", b.num_features));
  }
  return absl::OkStatus();
}

// Shared by both weight forms; weight(i, mask) for masks without bit i.
template <typename WeightFn>
std::vector<double> BruteForceImpacts(const HypercubeFunction& f,
                                      WeightFn weight) {
  const int k = f.k;
  const std::uint32_t points = std::uint32_t{1} << k;
  std::vector<std::uint32_t> pow3(k + 1, 1);
  for (int j = 1; j <= k; ++j) pow3[j] = 3 * pow3[j - 1];

  // Subset S and the values of x on S are coded as sum_{j in S} 3^j (1 + x_j);
  // code(S, x) for every S is filled per x by peeling the lowest bit.
  std::vector<std::uint32_t> code(points);
  auto fill_codes = [&](std::uint32_t x) {
    code[0] = 0;
    for (std::uint32_t s = 1; s < points; ++s) {
      const int low = __builtin_ctz(s);
      code[s] = code[s & (s - 1)] + pow3[low] * (1 + ((x >> low) & 1u));
    }
  };

  // mean[code(S, x)] = g_x(S).
  std::vector<double> share(k + 1);
  for (int size = 0; size <= k; ++size) share[size] = std::ldexp(1.0, size - k);
  std::vector<double> mean(pow3[k], 0.0);
  for (std::uint32_t x = 0; x < points; ++x) {
    fill_codes(x);
    for (std::uint32_t s = 0; s < points; ++s) {
      mean[code[s]] += f.table[x] * share[__builtin_popcount(s)];
    }
  }

  std::vector<double> impacts(k, 0.0);
  for (std::uint32_t x = 0; x < points; ++x) {
    fill_codes(x);
    for (int i = 0; i < k; ++i) {
      const std::uint32_t with = std::uint32_t{1} << i;
      const std::uint32_t step = pow3[i] * (1 + ((x >> i) & 1u));
      double omega = 0;
      for (std::uint32_t s = 0; s < points; ++s) {
        if (s & with) continue;
        omega += weight(i, s) * (mean[code[s] + step] - mean[code[s]]);
      }
      impacts[i] += std::fabs(omega);
    }
  }
  return impacts;
}

absl::Status CheckBruteForceDim(const HypercubeFunction& f) {
  if (absl::Status s = ValidateHypercube(f); !s.ok()) return s;
  if (f.k > kMaxBruteForceDim) {
    return absl::OutOfRangeError(absl::StrCat(
        "hypercube dimension ", f.k, " exceeds the brute-force limit ",
        kMaxBruteForceDim));
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status ValidateTable(const AttributionTable& table) {
  if (table.num_features < 0) {
    return absl::InvalidArgumentError("negative feature count");
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (static_cast<int>(table.rows[r].values.size()) != table.num_features) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", r, " has ", table.rows[r].values.size(),
                       " values, expected ", table.num_features));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> GlobalImpact(const AttributionTable& table,
                                                 bool mean) {
  if (absl::Status s = ValidateTable(table); !s.ok()) return s;
  if (table.rows.empty()) {
    return absl::InvalidArgumentError("global impact of an empty table");
  }
  std::vector<double> impact(table.num_features, 0.0);
  for (const Attribution& row : table.rows) {
    for (int i = 0; i < table.num_features; ++i) {
      impact[i] += std::fabs(row.values[i]);
    }
  }
  if (mean) {
    for (double& value : impact) value /= table.rows.size();
  }
  return impact;
}

absl::StatusOr<ErrorMetrics> CompareTables(const AttributionTable& a,
                                           const AttributionTable& b) {
  if (absl::Status s = CheckSameShape(a, b); !s.ok()) return s;
  if (a.rows.empty()) return absl::InvalidArgumentError("empty tables");
  ErrorMetrics out;
  out.mae.assign(a.num_features, 0.0);
  out.rmse.assign(a.num_features, 0.0);
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    for (int i = 0; i < a.num_features; ++i) {
      const double diff = a.rows[r].values[i] - b.rows[r].values[i];
      out.mae[i] += std::fabs(diff);
      out.rmse[i] += diff * diff;
    }
  }
  const double count = static_cast<double>(a.rows.size());
  for (int i = 0; i < a.num_features; ++i) {
    out.mae[i] /= count;
    out.rmse[i] = std::sqrt(out.rmse[i] / count);
  }
  return out;
}

std::vector<int> RankFeatures(std::span<const double> values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    return std::fabs(values[lhs]) > std::fabs(values[rhs]);
  });
  return order;
}

absl::StatusOr<int> ModifiedCayley(std::span<const double> a,
                                   std::span<const double> b, int top_n) {
  if (a.size() != b.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "value vectors differ in length: ", a.size(), " vs ", b.size()));
  }
  if (top_n < 0 || top_n > static_cast<int>(a.size())) {
    return absl::InvalidArgumentError(absl::StrCat(
        "top_n ", top_n, " outside [0, ", a.size(), "]"));
  }
  std::vector<int> list_a = RankFeatures(a);
  std::vector<int> list_b = RankFeatures(b);
  list_a.resize(top_n);
  list_b.resize(top_n);
  const std::vector<int> head_a = list_a;
  for (const int feature : list_b) {
    if (std::find(head_a.begin(), head_a.end(), feature) == head_a.end()) {
      list_a.push_back(feature);
    }
  }
  for (const int feature : head_a) {
    if (std::find(list_b.begin(), list_b.begin() + top_n, feature) ==
        list_b.begin() + top_n) {
      list_b.push_back(feature);
    }
  }

  // sigma(list_a[p]) = list_b[p]; count its cycles.
  const int size = static_cast<int>(list_a.size());
  std::vector<int> position_in_a(a.size(), -1);
  for (int p = 0; p < size; ++p) position_in_a[list_a[p]] = p;
  std::vector<char> seen(size, 0);
  int cycles = 0;
  for (int start = 0; start < size; ++start) {
    if (seen[start]) continue;
    ++cycles;
    for (int p = start; !seen[p]; p = position_in_a[list_b[p]]) seen[p] = 1;
  }
  return size - cycles;
}

absl::StatusOr<double> MeanModifiedCayley(const AttributionTable& a,
                                          const AttributionTable& b,
                                          int top_n) {
  if (absl::Status s = CheckSameShape(a, b); !s.ok()) return s;
  if (a.rows.empty()) return absl::InvalidArgumentError("empty tables");
  double total = 0;
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    auto distance = ModifiedCayley(a.rows[r].values, b.rows[r].values, top_n);
    if (!distance.ok()) return distance.status();
    total += *distance;
  }
  return total / a.rows.size();
}

absl::Status ValidateHypercube(const HypercubeFunction& f) {
  if (f.k < 0 || f.k > kMaxHypercubeDim) {
    return absl::InvalidArgumentError(absl::StrCat(
        "hypercube dimension ", f.k, " outside [0, ", kMaxHypercubeDim, "]"));
  }
  const std::size_t expected = std::size_t{1} << f.k;
  if (f.table.size() != expected) {
    return absl::InvalidArgumentError(absl::StrCat(
        "table has ", f.table.size(), " entries, expected 2^", f.k, " = ",
        expected));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> HypercubeImpacts(
    const HypercubeFunction& f, const WeightScheme& scheme) {
  if (absl::Status s = CheckBruteForceDim(f); !s.ok()) return s;
  if (f.k == 0) return std::vector<double>();
  auto per_size = SubsetWeights<double>(scheme, f.k);
  if (!per_size.ok()) return per_size.status();
  return BruteForceImpacts(f, [&](int, std::uint32_t mask) {
    return (*per_size)[__builtin_popcount(mask)];
  });
}

absl::StatusOr<std::vector<double>> HypercubeImpactsPerSubset(
    const HypercubeFunction& f, std::span<const std::vector<double>> weights) {
  if (absl::Status s = CheckBruteForceDim(f); !s.ok()) return s;
  if (static_cast<int>(weights.size()) != f.k) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need ", f.k, " weight vectors, got ", weights.size()));
  }
  const std::size_t points = std::size_t{1} << f.k;
  for (int i = 0; i < f.k; ++i) {
    if (weights[i].size() != points) {
      return absl::InvalidArgumentError(absl::StrCat(
          "weight vector ", i, " has ", weights[i].size(), " entries, expected ",
          points));
    }
    double total = 0;
    for (std::size_t mask = 0; mask < points; ++mask) {
      if ((mask >> i) & 1u) continue;
      if (!(weights[i][mask] >= 0) || !std::isfinite(weights[i][mask])) {
        return absl::InvalidArgumentError(absl::StrCat(
            "weight for feature ", i, " subset ", mask, " is negative"));
      }
      total += weights[i][mask];
    }
    if (std::fabs(total - 1.0) > 1e-9) {
      return absl::InvalidArgumentError(absl::StrCat(
          "weights for feature ", i, " sum to ", total, ", expected 1"));
    }
  }
  return BruteForceImpacts(
      f, [&](int i, std::uint32_t mask) { return weights[i][mask]; });
}

std::vector<double> FlipImpacts(const HypercubeFunction& f) {
  std::vector<double> impacts(f.k, 0.0);
  for (std::size_t x = 0; x < f.table.size(); ++x) {
    for (int i = 0; i < f.k; ++i) {
      impacts[i] += 0.5 * std::fabs(f.table[x] - f.table[x ^ (1u << i)]);
    }
  }
  return impacts;
}

std::vector<bool> IsMonotone(const HypercubeFunction& f) {
  std::vector<bool> monotone(f.k, true);
  for (int i = 0; i < f.k; ++i) {
    bool up = false;
    bool down = false;
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t x = 0; x < f.table.size(); ++x) {
      if (!(x & bit)) continue;
      const double diff = f.table[x] - f.table[x ^ bit];
      up = up || diff > 0;
      down = down || diff < 0;
    }
    monotone[i] = !(up && down);
  }
  return monotone;
}

}  // namespace treeattr
