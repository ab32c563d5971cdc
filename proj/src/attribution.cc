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

#include "treeattr/attribution.h"

namespace treeattr {

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kShapleyBasic:
      return "shapley_basic";
    case Method::kShapleyFast:
      return "shapley_fast";
    case Method::kBanzhafBasic:
      return "banzhaf_basic";
    case Method::kBanzhafFast:
      return "banzhaf_fast";
    case Method::kOracleShapley:
      return "oracle_shapley";
    case Method::kOracleBanzhaf:
      return "oracle_banzhaf";
  }
  return "unknown";
}

std::optional<Method> ParseMethod(std::string_view name) {
  for (const Method method : kAllMethods) {
    if (MethodName(method) == name) return method;
  }
  return std::nullopt;
}

bool IsShapley(Method method) {
  return method == Method::kShapleyBasic || method == Method::kShapleyFast ||
         method == Method::kOracleShapley;
}

}  // namespace treeattr
