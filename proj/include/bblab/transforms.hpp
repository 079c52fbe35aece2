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

#ifndef BBLAB_TRANSFORMS_HPP_
#define BBLAB_TRANSFORMS_HPP_

#include <vector>

#include "bblab/affine_map.hpp"
#include "bblab/polytope.hpp"

namespace bblab {

struct FlipSpec {
  std::size_t n = 0;
  std::vector<std::size_t> flipped;  // J ⊆ [n]
};

struct EmbedSpec {
  std::size_t n = 0;
  std::size_t zeros = 0;
  std::size_t ones = 0;
  // Bijection on [n + zeros + ones]; empty means identity placement
  // (originals first, then zeros, then ones).
  std::vector<std::size_t> positions;
};

struct DupSpec {
  std::size_t n = 0;
  std::vector<std::size_t> tuple;
};

AffineMap MakeFlip(const FlipSpec& spec);
AffineMap MakeEmbed(const EmbedSpec& spec);
AffineMap MakeDup(const DupSpec& spec);
AffineMap MakeFromStep(const MapStep& step);

// outer ∘ inner: (C2 C1, C2 d1 + d2). Step lists concatenate.
AffineMap Compose(const AffineMap& outer, const AffineMap& inner);

// Exact image of P under a map built by the constructors above. Flips
// substitute x_i = 1 - y_i, embeddings pin appended coordinates with
// equalities, duplications tie copies to their source. Oracle families are
// carried through a wrapping oracle.
Polytope ApplyMapPolytope(const AffineMap& f, const Polytope& p);

}  // namespace bblab

#endif  // BBLAB_TRANSFORMS_HPP_
