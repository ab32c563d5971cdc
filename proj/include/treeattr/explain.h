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


// One entry point for every method, including the enumeration oracles.

#ifndef TREEATTR_EXPLAIN_H_
#define TREEATTR_EXPLAIN_H_

#include <span>

#include "absl/status/statusor.h"
#include "treeattr/attribution.h"
#include "treeattr/model.h"
#include "treeattr/rational.h"

namespace treeattr {

// InvalidArgument for a wrong-length x, FailedPrecondition for exact
// arithmetic on a model with fractional coverages, and OutOfRange when an
// oracle method would exceed its feature cap. Oracle op counts are zero.
template <typename Real>
absl::StatusOr<Explanation<Real>> Explain(const TreeEnsemble& model,
                                          std::span<const double> x,
                                          Method method);

// Runs in `mode` and converts to double.
absl::StatusOr<Explanation<double>> ExplainInMode(const TreeEnsemble& model,
                                                  std::span<const double> x,
                                                  Method method,
                                                  NumericMode mode);

extern template absl::StatusOr<Explanation<double>> Explain<double>(
    const TreeEnsemble&, std::span<const double>, Method);
extern template absl::StatusOr<Explanation<Rational>> Explain<Rational>(
    const TreeEnsemble&, std::span<const double>, Method);

}  // namespace treeattr

#endif  // TREEATTR_EXPLAIN_H_
