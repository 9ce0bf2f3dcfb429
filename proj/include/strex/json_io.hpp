#pragma once

#include <string>

#include <json.hpp>

#include "strex/classify2d.hpp"
#include "strex/dominance.hpp"
#include "strex/geom.hpp"
#include "strex/mat.hpp"
#include "strex/mra.hpp"
#include "strex/tiling.hpp"

namespace strex {

// ordered_json keeps field order fixed so identical inputs serialize to
// byte-identical output.
using Json = nlohmann::ordered_json;

Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

Json region_to_json(const Region& r);
Region region_from_json(const Json& j);

Json tile_report_to_json(const TileReport& rep);
Json dominance_cert_to_json(const DominanceCert& cert);
Json outcome_to_json(const Outcome2D& o);
Json mra_trace_to_json(const MraTrace& t);

}  // namespace strex
