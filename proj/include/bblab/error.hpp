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

#ifndef BBLAB_ERROR_HPP_
#define BBLAB_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace bblab {

enum class ErrorCode {
  kDimensionMismatch,
  kInternalError,
  kEmptyAtomList,
  kNotSeparable,
  kEmptyList,
  kIllegalDisjunction,
  kPointNotInP,
  kInvalidPermutation,
  kIndexOutOfRange,
  kNonCanonicalMap,
  kTooLargeForExplicit,
  kTooLarge,
  kSpecViolation,
  kPIsFeasible,
  kPIsEmpty,
  kInequalityValidForP,
  kInequalityInvalidForHull,
  kPreconditionViolated,
  kStrategyStuck,
  kPNotInfeasible,
  kPointInHull,
  kParseError,
  kConfigError,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type; the code
// identifies the failing contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bblab

#endif  // BBLAB_ERROR_HPP_
