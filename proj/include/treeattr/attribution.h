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

#ifndef TREEATTR_ATTRIBUTION_H_
#define TREEATTR_ATTRIBUTION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treeattr/rational.h"

namespace treeattr {

enum class Method : std::uint8_t {
  kShapleyBasic,
  kShapleyFast,
  kBanzhafBasic,
  kBanzhafFast,
  kOracleShapley,
  kOracleBanzhaf,
};

inline constexpr Method kAllMethods[] = {
    Method::kShapleyBasic,  Method::kShapleyFast,   Method::kBanzhafBasic,
    Method::kBanzhafFast,   Method::kOracleShapley, Method::kOracleBanzhaf,
};

std::string_view MethodName(Method method);
std::optional<Method> ParseMethod(std::string_view name);
bool IsShapley(Method method);

// Per-feature attribution of one prediction plus the baseline g(empty).
template <typename Real>
struct BasicAttribution {
  std::vector<Real> values;
  Real expected_value = Real(0);
  Method method = Method::kShapleyBasic;
};

using Attribution = BasicAttribution<double>;
using ExactAttribution = BasicAttribution<Rational>;

inline Attribution ToDouble(const ExactAttribution& exact) {
  Attribution out;
  out.values.reserve(exact.values.size());
  for (const Rational& value : exact.values) {
    out.values.push_back(value.get_d());
  }
  out.expected_value = exact.expected_value.get_d();
  out.method = exact.method;
  return out;
}

// Work done on DP states. Each counter is the number of state entries
// written by the respective operation, so for vector states an operation on
// a length-m state adds m.
struct OpCounter {
  std::uint64_t add_count = 0;
  std::uint64_t del_count = 0;
  std::uint64_t scale_count = 0;

  std::uint64_t total() const { return add_count + del_count + scale_count; }
  OpCounter& operator+=(const OpCounter& other) {
    add_count += other.add_count;
    del_count += other.del_count;
    scale_count += other.scale_count;
    return *this;
  }
};

template <typename Real>
struct Explanation {
  BasicAttribution<Real> attribution;
  OpCounter ops;
};

}  // namespace treeattr

#endif  // TREEATTR_ATTRIBUTION_H_
