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

#include "bblab/rational.hpp"

#include <cctype>
#include <sstream>

#include "bblab/error.hpp"

namespace bblab {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInternalError: return "InternalError";
    case ErrorCode::kEmptyAtomList: return "EmptyAtomList";
    case ErrorCode::kNotSeparable: return "NotSeparable";
    case ErrorCode::kEmptyList: return "EmptyList";
    case ErrorCode::kIllegalDisjunction: return "IllegalDisjunction";
    case ErrorCode::kPointNotInP: return "PointNotInP";
    case ErrorCode::kInvalidPermutation: return "InvalidPermutation";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNonCanonicalMap: return "NonCanonicalMap";
    case ErrorCode::kTooLargeForExplicit: return "TooLargeForExplicit";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kSpecViolation: return "SpecViolation";
    case ErrorCode::kPIsFeasible: return "PIsFeasible";
    case ErrorCode::kPIsEmpty: return "PIsEmpty";
    case ErrorCode::kInequalityValidForP: return "InequalityValidForP";
    case ErrorCode::kInequalityInvalidForHull: return "InequalityInvalidForHull";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kStrategyStuck: return "StrategyStuck";
    case ErrorCode::kPNotInfeasible: return "PNotInfeasible";
    case ErrorCode::kPointInHull: return "PointInHull";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace {

bool IsIntegerLiteral(std::string_view text) {
  if (text.empty()) return false;
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

}  // namespace

Rational MakeRational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::kParseError, "zero denominator");
  Rational value(num, den);
  value.canonicalize();
  return value;
}

Rational MakeRational(std::int64_t num, std::int64_t den) {
  return MakeRational(Integer(std::to_string(num)), Integer(std::to_string(den)));
}

Integer ParseInteger(std::string_view text) {
  if (!IsIntegerLiteral(text)) {
    throw Error(ErrorCode::kParseError, "not an integer: '" + std::string(text) + "'");
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return Integer(digits);
}

Rational ParseRational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(ParseInteger(text));
  const std::string_view den = text.substr(slash + 1);
  if (!den.empty() && (den[0] == '-' || den[0] == '+')) {
    throw Error(ErrorCode::kParseError, "signed denominator in '" + std::string(text) + "'");
  }
  return MakeRational(ParseInteger(text.substr(0, slash)), ParseInteger(den));
}

std::string ToString(const Rational& value) { return value.get_str(); }
std::string ToString(const Integer& value) { return value.get_str(); }

Integer Floor(const Rational& value) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Integer Ceil(const Rational& value) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Rational Dot(const RationalVector& a, const RationalVector& b) {
  Rational sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) sum += a[i] * b[i];
  }
  return sum;
}

Rational Dot(const IntegerVector& a, const RationalVector& b) {
  Rational sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) sum += Rational(a[i]) * b[i];
  }
  return sum;
}

RationalVector ToRational(const IntegerVector& values) {
  RationalVector out;
  out.reserve(values.size());
  for (const auto& v : values) out.emplace_back(v);
  return out;
}

RationalVector Constant(std::size_t n, const Rational& value) {
  return RationalVector(n, value);
}

RationalVector HalfPoint(std::size_t n) { return Constant(n, Rational(1, 2)); }

std::string ToString(const RationalVector& values) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ", ";
    out << values[i].get_str();
  }
  out << ')';
  return out.str();
}

}  // namespace bblab
