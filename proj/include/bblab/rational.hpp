// Copyright 2026 The bblab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BBLAB_RATIONAL_HPP_
#define BBLAB_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bblab {

// Exact rationals. GMP keeps every arithmetic result in lowest terms with a
// positive denominator; values built from parts go through MakeRational.
using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;
using IntegerVector = std::vector<Integer>;

Rational MakeRational(const Integer& num, const Integer& den);
Rational MakeRational(std::int64_t num, std::int64_t den = 1);

// Accepts "p", "-p", "p/q". Throws Error(kParseError) otherwise.
Rational ParseRational(std::string_view text);
std::string ToString(const Rational& value);
std::string ToString(const Integer& value);
Integer ParseInteger(std::string_view text);

inline bool IsIntegral(const Rational& value) {
  return value.get_den() == 1;
}

Integer Floor(const Rational& value);
Integer Ceil(const Rational& value);

Rational Dot(const RationalVector& a, const RationalVector& b);
Rational Dot(const IntegerVector& a, const RationalVector& b);

RationalVector ToRational(const IntegerVector& values);
RationalVector Constant(std::size_t n, const Rational& value);

// ½·1 in dimension n.
RationalVector HalfPoint(std::size_t n);

std::string ToString(const RationalVector& values);

}  // namespace bblab

#endif  // BBLAB_RATIONAL_HPP_
