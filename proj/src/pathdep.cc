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

#include "treeattr/pathdep.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace treeattr {
namespace {

// Tree with leaf values and coverages converted to Real once.
template <typename Real>
struct PreparedTree {
  const Tree* tree;
  std::vector<Real> coverage;
  std::vector<Real> value;
};

template <typename Real>
std::vector<PreparedTree<Real>> Prepare(const TreeEnsemble& model) {
  std::vector<PreparedTree<Real>> prepared;
  prepared.reserve(model.trees.size());
  for (const Tree& tree : model.trees) {
    PreparedTree<Real> p{&tree, {}, {}};
    p.coverage.reserve(tree.nodes.size());
    p.value.reserve(tree.nodes.size());
    for (const TreeNode& node : tree.nodes) {
      p.coverage.push_back(FromDouble<Real>(node.coverage));
      p.value.push_back(FromDouble<Real>(node.value));
    }
    prepared.push_back(std::move(p));
  }
  return prepared;
}

template <typename Real>
Real Descend(const PreparedTree<Real>& prepared, int v,
             std::span<const double> x, std::span<const char> in_subset) {
  const TreeNode& node = prepared.tree->nodes[v];
  if (node.is_leaf()) return prepared.value[v];
  if (in_subset[node.feature]) {
    return Descend(prepared,
                   x[node.feature] < node.threshold ? node.left : node.right, x,
                   in_subset);
  }
  Real total = prepared.coverage[node.left] *
               Descend(prepared, node.left, x, in_subset);
  total += prepared.coverage[node.right] *
           Descend(prepared, node.right, x, in_subset);
  total /= prepared.coverage[v];
  return total;
}

template <typename Real>
Real EvalPrepared(const TreeEnsemble& model,
                  const std::vector<PreparedTree<Real>>& prepared,
                  std::span<const double> x, std::span<const char> in_subset) {
  Real total(0);
  for (const PreparedTree<Real>& tree : prepared) {
    total += Descend(tree, 0, x, in_subset);
  }
  return total * model.TreeWeight<Real>();
}

template <typename Real>
Real Binomial(int n, int k) {
  Real result(1);
  for (int j = 1; j <= k; ++j) {
    result *= Real(n - k + j);
    result /= Real(j);
  }
  return result;
}

// Desc(v, S) depends on S only through the features split on inside the
// subtree of v, so it is tabulated over those (`bits`, ascending) and the
// recursion reads the children's tables instead of re-walking them.
template <typename Real>
struct NodeTable {
  std::vector<int> bits;
  std::vector<Real> g;
};

// Maps a subset over `from` to the subset of its members that are in `to`.
inline std::uint32_t Project(std::uint32_t sub, const std::vector<int>& from,
                             const std::vector<int>& to) {
  std::uint32_t out = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < from.size() && j < to.size(); ++i) {
    if (from[i] != to[j]) continue;
    out |= ((sub >> i) & 1u) << j;
    ++j;
  }
  return out;
}

template <typename Real>
NodeTable<Real> BuildNodeTable(const PreparedTree<Real>& prepared, int v,
                               std::span<const double> x,
                               const std::vector<int>& bit_of) {
  const TreeNode& node = prepared.tree->nodes[v];
  if (node.is_leaf()) return {{}, {prepared.value[v]}};
  const NodeTable<Real> left = BuildNodeTable(prepared, node.left, x, bit_of);
  const NodeTable<Real> right = BuildNodeTable(prepared, node.right, x, bit_of);
  const int own = bit_of[node.feature];

  NodeTable<Real> out;
  std::set_union(left.bits.begin(), left.bits.end(), right.bits.begin(),
                 right.bits.end(), std::back_inserter(out.bits));
  if (!std::binary_search(out.bits.begin(), out.bits.end(), own)) {
    out.bits.insert(std::lower_bound(out.bits.begin(), out.bits.end(), own),
                    own);
  }
  const int own_pos = static_cast<int>(
      std::lower_bound(out.bits.begin(), out.bits.end(), own) -
      out.bits.begin());
  const bool go_left = x[node.feature] < node.threshold;
  const std::uint32_t size = std::uint32_t{1} << out.bits.size();
  out.g.resize(size);
  for (std::uint32_t sub = 0; sub < size; ++sub) {
    const std::uint32_t a = Project(sub, out.bits, left.bits);
    const std::uint32_t b = Project(sub, out.bits, right.bits);
    if ((sub >> own_pos) & 1u) {
      out.g[sub] = go_left ? left.g[a] : right.g[b];
    } else {
      Real total = prepared.coverage[node.left] * left.g[a];
      total += prepared.coverage[node.right] * right.g[b];
      total /= prepared.coverage[v];
      out.g[sub] = std::move(total);
    }
  }
  return out;
}

// by_size[bit][k]: sum over S with |S| = k and bit not in S of
// g(S + bit) - g(S), accumulated in increasing mask order.
template <typename Real>
std::vector<std::vector<Real>> MarginalsBySize(const std::vector<Real>& g,
                                               int r) {
  std::vector<std::vector<Real>> by_size(r, std::vector<Real>(r, Real(0)));
  for (int bit = 0; bit < r; ++bit) {
    const std::uint32_t with = std::uint32_t{1} << bit;
    for (std::uint32_t mask = 0; mask < g.size(); ++mask) {
      if (mask & with) continue;
      Real& slot = by_size[bit][__builtin_popcount(mask)];
      slot += g[mask | with];
      slot -= g[mask];
    }
  }
  return by_size;
}

// Exact version over a common denominator: integer sums, one division each.
template <>
std::vector<std::vector<Rational>> MarginalsBySize<Rational>(
    const std::vector<Rational>& g, int r) {
  mpz_class common(1);
  for (const Rational& value : g) {
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), value.get_den_mpz_t());
  }
  std::vector<mpz_class> scaled(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    mpz_divexact(scaled[i].get_mpz_t(), common.get_mpz_t(),
                 g[i].get_den_mpz_t());
    scaled[i] *= g[i].get_num();
  }
  std::vector<std::vector<Rational>> by_size(r, std::vector<Rational>(r));
  std::vector<mpz_class> sums(r);
  for (int bit = 0; bit < r; ++bit) {
    for (mpz_class& sum : sums) sum = 0;
    const std::uint32_t with = std::uint32_t{1} << bit;
    for (std::uint32_t mask = 0; mask < g.size(); ++mask) {
      if (mask & with) continue;
      mpz_class& slot = sums[__builtin_popcount(mask)];
      slot += scaled[mask | with];
      slot -= scaled[mask];
    }
    for (int k = 0; k < r; ++k) {
      by_size[bit][k] = Rational(sums[k], common);
      by_size[bit][k].canonicalize();
    }
  }
  return by_size;
}

}  // namespace

std::vector<char> FeatureSubset::Membership(int num_features) const {
  std::vector<char> in_subset(num_features, 0);
  for (int bit = 0; bit < static_cast<int>(relevant_.size()); ++bit) {
    if (contains_bit(bit)) in_subset[relevant_[bit]] = 1;
  }
  return in_subset;
}

template <typename Real>
absl::StatusOr<std::vector<Real>> SubsetWeights(const WeightScheme& scheme,
                                                int n) {
  if (n < 1) return absl::InvalidArgumentError("weights need n >= 1");
  std::vector<Real> weights;
  weights.reserve(n);
  switch (scheme.kind) {
    case WeightScheme::Kind::kShapley:
      for (int k = 0; k < n; ++k) {
        weights.push_back(Real(1) / (Real(n) * Binomial<Real>(n - 1, k)));
      }
      break;
    case WeightScheme::Kind::kBanzhaf: {
      Real power(1);
      for (int k = 0; k < n - 1; ++k) power *= Real(2);
      weights.assign(n, Real(1) / power);
      break;
    }
    case WeightScheme::Kind::kCustom: {
      if (static_cast<int>(scheme.per_size.size()) != n) {
        return absl::InvalidArgumentError(
            absl::StrCat("custom weights need ", n, " per-size entries, got ",
                         scheme.per_size.size()));
      }
      double total = 0;
      for (int k = 0; k < n; ++k) {
        const double w = scheme.per_size[k];
        if (!(w >= 0) || !std::isfinite(w)) {
          return absl::InvalidArgumentError(
              absl::StrCat("custom weight for size ", k, " is negative"));
        }
        total += w * ToDouble(Binomial<Real>(n - 1, k));
        weights.push_back(FromDouble<Real>(w));
      }
      if (std::fabs(total - 1.0) > 1e-9) {
        return absl::InvalidArgumentError(absl::StrCat(
            "custom weights over all subsets sum to ", total, ", expected 1"));
      }
      break;
    }
  }
  return weights;
}

template <typename Real>
Real EvalG(const TreeEnsemble& model, std::span<const double> x,
           std::span<const char> in_subset) {
  return EvalPrepared(model, Prepare<Real>(model), x, in_subset);
}

template <typename Real>
absl::StatusOr<SubsetTable<Real>> EvalAllSubsets(const TreeEnsemble& model,
                                                 std::span<const double> x) {
  SubsetTable<Real> table;
  table.num_features = model.num_features;
  table.relevant = RelevantFeatures(model);
  const int r = static_cast<int>(table.relevant.size());
  if (r > kOracleMaxFeatures) {
    return absl::OutOfRangeError(
        absl::StrCat("model uses ", r, " features; the oracle enumerates at "
                     "most ",
                     kOracleMaxFeatures));
  }
  std::vector<int> bit_of(model.num_features, -1);
  for (int bit = 0; bit < r; ++bit) bit_of[table.relevant[bit]] = bit;

  const std::uint32_t num_subsets = std::uint32_t{1} << r;
  table.g.assign(num_subsets, Real(0));
  for (const PreparedTree<Real>& tree : Prepare<Real>(model)) {
    const NodeTable<Real> root = BuildNodeTable(tree, 0, x, bit_of);
    const int t = static_cast<int>(root.bits.size());
    for (std::uint32_t mask = 0; mask < num_subsets; ++mask) {
      std::uint32_t sub = 0;
      for (int j = 0; j < t; ++j) sub |= ((mask >> root.bits[j]) & 1u) << j;
      table.g[mask] += root.g[sub];
    }
  }
  const Real weight = model.TreeWeight<Real>();
  if (weight != Real(1)) {
    for (Real& value : table.g) value *= weight;
  }
  return table;
}

template <typename Real>
absl::StatusOr<BasicAttribution<Real>> ValuesFromTable(
    const SubsetTable<Real>& table, const WeightScheme& scheme) {
  const int r = static_cast<int>(table.relevant.size());
  BasicAttribution<Real> out;
  out.method = scheme.kind == WeightScheme::Kind::kBanzhaf
                   ? Method::kOracleBanzhaf
                   : Method::kOracleShapley;
  out.values.assign(table.num_features, Real(0));
  out.expected_value = table.g[0];
  if (r == 0) return out;

  auto weights = SubsetWeights<Real>(scheme, r);
  if (!weights.ok()) return weights.status();
  const auto by_size = MarginalsBySize(table.g, r);
  for (int bit = 0; bit < r; ++bit) {
    Real total(0);
    for (int k = 0; k < r; ++k) total += (*weights)[k] * by_size[bit][k];
    out.values[table.relevant[bit]] = total;
  }
  return out;
}

template <typename Real>
absl::StatusOr<BasicAttribution<Real>> OracleValues(
    const TreeEnsemble& model, std::span<const double> x,
    const WeightScheme& scheme) {
  auto table = EvalAllSubsets<Real>(model, x);
  if (!table.ok()) return table.status();
  return ValuesFromTable(*table, scheme);
}

template absl::StatusOr<std::vector<double>> SubsetWeights<double>(
    const WeightScheme&, int);
template absl::StatusOr<std::vector<Rational>> SubsetWeights<Rational>(
    const WeightScheme&, int);
template double EvalG<double>(const TreeEnsemble&, std::span<const double>,
                              std::span<const char>);
template Rational EvalG<Rational>(const TreeEnsemble&, std::span<const double>,
                                  std::span<const char>);
template absl::StatusOr<SubsetTable<double>> EvalAllSubsets<double>(
    const TreeEnsemble&, std::span<const double>);
template absl::StatusOr<SubsetTable<Rational>> EvalAllSubsets<Rational>(
    const TreeEnsemble&, std::span<const double>);
template absl::StatusOr<BasicAttribution<double>> ValuesFromTable<double>(
    const SubsetTable<double>&, const WeightScheme&);
template absl::StatusOr<BasicAttribution<Rational>> ValuesFromTable<Rational>(
    const SubsetTable<Rational>&, const WeightScheme&);
template absl::StatusOr<BasicAttribution<double>> OracleValues<double>(
    const TreeEnsemble&, std::span<const double>, const WeightScheme&);
template absl::StatusOr<BasicAttribution<Rational>> OracleValues<Rational>(
    const TreeEnsemble&, std::span<const double>, const WeightScheme&);

}  // namespace treeattr
