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

#ifndef BBLAB_JSON_IO_HPP_
#define BBLAB_JSON_IO_HPP_

#include <string>

#include "bblab/affine_map.hpp"
#include "bblab/bb_core.hpp"
#include "bblab/bb_tree.hpp"
#include "bblab/polytope.hpp"
#include "bblab/search.hpp"
#include "json.hpp"

namespace bblab {

using Json = nlohmann::json;

// All readers throw Error(kParseError) on malformed input.

Json RationalToJson(const Rational& value);
Rational RationalFromJson(const Json& j);
Json PointToJson(const RationalVector& x);
RationalVector PointFromJson(const Json& j);

Json RowToJson(const LinearConstraint& row);
LinearConstraint RowFromJson(const Json& j);

// Oracles from mapped families cannot be described, so their rows are
// written out explicitly.
Json PolytopeToJson(const Polytope& p);
Polytope PolytopeFromJson(const Json& j);

Json TreeToJson(const BBTree& tree);
// `dim` checks the disjunction length; 0 accepts any common length.
BBTree TreeFromJson(const Json& j, std::size_t dim = 0);

Json MapToJson(const AffineMap& f);
AffineMap MapFromJson(const Json& j);

Json CertificateToJson(const FarkasCertificate& certificate);
FarkasCertificate CertificateFromJson(const Json& j);

Json LeafReportToJson(const LeafReport& leaf);
LeafReport LeafReportFromJson(const Json& j);

Json InfeasibilityReportToJson(const InfeasibilityReport& report);
InfeasibilityReport InfeasibilityReportFromJson(const Json& j);
Json SolveReportToJson(const SolveReport& report);
Json SeparationReportToJson(const SeparationReport& report);

Json RunReportToJson(const RunReport& report);

Json ReadJsonFile(const std::string& path);
void WriteJsonFile(const std::string& path, const Json& j);

}  // namespace bblab

#endif  // BBLAB_JSON_IO_HPP_
