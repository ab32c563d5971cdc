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

// Numeric plumbing shared by the float64 and exact execution paths. Every
// algorithm in the library is a template over `Real`, instantiated for
// `double` and for `Rational` (GMP rationals, always kept canonical).

#ifndef TREEATTR_RATIONAL_H_
#define TREEATTR_RATIONAL_H_

#include <gmpxx.h>

#include <cmath>
#include <string>

namespace treeattr {

using Rational = mpq_class;

enum class NumericMode { kFloat64, kRational };

// Exact conversion: every finite double is a dyadic rational.
template <typename Real>
Real FromDouble(double value);

template <>
inline double FromDouble<double>(double value) {
  return value;
}

template <>
inline Rational FromDouble<Rational>(double value) {
  Rational result(value);
  result.canonicalize();
  return result;
}

template <typename Real>
Real FromInt(long value) {
  return Real(value);
}

inline double ToDouble(double value) { return value; }
inline double ToDouble(const Rational& value) { return value.get_d(); }

inline double Abs(double value) { return std::fabs(value); }
inline Rational Abs(const Rational& value) { return abs(value); }

// "777/2", "0", "-3". Canonical form.
inline std::string ToString(const Rational& value) { return value.get_str(); }

// Parses "p/q" or "p". Returns false on malformed input.
inline bool ParseRational(const std::string& text, Rational* out) {
  Rational parsed;
  if (parsed.set_str(text, 10) != 0) return false;
  if (parsed.get_den() == 0) return false;
  parsed.canonicalize();
  *out = parsed;
  return true;
}

}  // namespace treeattr

#endif  // TREEATTR_RATIONAL_H_
