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

#ifndef BBLAB_AFFINE_MAP_HPP_
#define BBLAB_AFFINE_MAP_HPP_

#include <string>
#include <vector>

#include "bblab/rational.hpp"

namespace bblab {

// One of the three canonical integral operations. Indices are 0-based.
struct MapStep {
  enum class Kind { kFlip, kEmbed, kDup };
  Kind kind = Kind::kFlip;
  std::size_t n = 0;                  // input dimension
  std::vector<std::size_t> indices;   // flip: J; dup: (j_1, ..., j_k)
  std::size_t zeros = 0;              // embed: appended 0-coordinates
  std::size_t ones = 0;               // embed: appended 1-coordinates
  std::vector<std::size_t> positions; // embed: canonical coordinate i lands at positions[i]

  std::size_t OutputDim() const;
  friend bool operator==(const MapStep&, const MapStep&) = default;
};

std::string KindName(MapStep::Kind kind);

// f(x) = Cx + d with integer C (m x n) and d. `steps` records how the map was
// built (innermost first); image polytopes are only available for maps with
// a recorded decomposition.
struct AffineMap {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  std::vector<IntegerVector> C;
  IntegerVector d;
  std::vector<MapStep> steps;
  bool canonical = false;

  static AffineMap Identity(std::size_t n);
  // A map given only by its matrix; not canonical.
  static AffineMap FromMatrix(std::vector<IntegerVector> c, IntegerVector d);

  RationalVector Apply(const RationalVector& x) const;
  // C^T a.
  IntegerVector TransposeApply(const IntegerVector& a) const;
  std::string kind() const;

  friend bool operator==(const AffineMap& a, const AffineMap& b) {
    return a.in_dim == b.in_dim && a.out_dim == b.out_dim && a.C == b.C && a.d == b.d;
  }
};

}  // namespace bblab

#endif  // BBLAB_AFFINE_MAP_HPP_
