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

#ifndef BBLAB_ENUMERATE_HPP_
#define BBLAB_ENUMERATE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bblab/parallel.hpp"
#include "bblab/polytope.hpp"

namespace bblab {

inline constexpr std::size_t kMaxEnumerationDim = 24;

// Bit j of a mask is coordinate j of the 0/1 point.
RationalVector MaskToPoint(std::uint32_t mask, std::size_t n);
std::uint32_t PointToMask(const RationalVector& point);

// All 0/1 points of P ∩ {extra}, in increasing mask order. Needs the box flag
// and dim <= 24. The parallel path splits the cube into blocks and merges the
// per-block results in order, so both paths return the same list.
std::vector<std::uint32_t> ZeroOneMasks(const Polytope& p, std::span<const LinearConstraint> extra = {},
                                        Execution execution = Execution::kParallel);

std::vector<RationalVector> EnumIntegerPoints(const Polytope& p,
                                              Execution execution = Execution::kParallel);

// Smallest-mask 0/1 point, if any.
std::optional<RationalVector> FirstZeroOnePoint(const Polytope& p,
                                                std::span<const LinearConstraint> extra = {});

// Exact LP-guided depth-first search for a 0/1 point of P ∩ {extra}; no
// dimension cap. Branches x_j = 0 before x_j = 1 on the first fractional
// coordinate of each LP point.
std::optional<RationalVector> SearchZeroOnePoint(const Polytope& p,
                                                 std::span<const LinearConstraint> extra = {});

}  // namespace bblab

#endif  // BBLAB_ENUMERATE_HPP_
