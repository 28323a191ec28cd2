#pragma once

#include <string>

#include <json.hpp>

#include "maslovp/dual.hpp"
#include "maslovp/homotopy.hpp"
#include "maslovp/index.hpp"

namespace maslovp {

using Json = nlohmann::json;

Json matrix_json(const Matrix& m);
Json vector_json(const Vector& v);
Json index_pair_json(const IndexPair& p, bool with_levels = false);
Json crossing_list_json(const CrossingList& c);
Json dual_report_json(const DualIndexReport& r);

/// Deterministic JSON text: object keys sorted, floats with 17 significant
/// digits, NaN and infinities as null, negative zero as 0.
std::string canonical_dump(const Json& j, int indent = 2);

}  // namespace maslovp
