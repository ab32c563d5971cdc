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


#include "treeattr/explain.h"

#include <type_traits>

#include "absl/status/status.h"
#include "treeattr/banzhaf.h"
#include "treeattr/pathdep.h"
#include "treeattr/shapley.h"

namespace treeattr {

template <typename Real>
absl::StatusOr<Explanation<Real>> Explain(const TreeEnsemble& model,
                                          std::span<const double> x,
                                          Method method) {
  if (absl::Status s = CheckFeatureVector(model, x); !s.ok()) return s;
  if constexpr (std::is_same_v<Real, Rational>) {
    if (!HasIntegerCoverages(model)) {
      return absl::FailedPreconditionError(
          "exact arithmetic needs integer coverages");
    }
  }
  switch (method) {
    case Method::kShapleyBasic:
      return ExplainShapleyBasic<Real>(model, x);
    case Method::kShapleyFast:
      return ExplainShapleyFast<Real>(model, x);
    case Method::kBanzhafBasic:
      return ExplainBanzhafBasic<Real>(model, x);
    case Method::kBanzhafFast:
      return ExplainBanzhafFast<Real>(model, x);
    case Method::kOracleShapley:
    case Method::kOracleBanzhaf: {
      auto values = OracleValues<Real>(model, x,
                                       method == Method::kOracleShapley
                                           ? WeightScheme::Shapley()
                                           : WeightScheme::Banzhaf());
      if (!values.ok()) return values.status();
      Explanation<Real> out;
      out.attribution = *std::move(values);
      return out;
    }
  }
  return absl::InvalidArgumentError("unknown method");
}

absl::StatusOr<Explanation<double>> ExplainInMode(const TreeEnsemble& model,
                                                  std::span<const double> x,
                                                  Method method,
                                                  NumericMode mode) {
  if (mode == NumericMode::kFloat64) return Explain<double>(model, x, method);
  auto exact = Explain<Rational>(model, x, method);
  if (!exact.ok()) return exact.status();
  return Explanation<double>{ToDouble(exact->attribution), exact->ops};
}

template absl::StatusOr<Explanation<double>> Explain<double>(
    const TreeEnsemble&, std::span<const double>, Method);
template absl::StatusOr<Explanation<Rational>> Explain<Rational>(
    const TreeEnsemble&, std::span<const double>, Method);

}  // namespace treeattr
