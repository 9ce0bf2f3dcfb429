#pragma once

#include <vector>

#include "strex/geom.hpp"
#include "strex/mat.hpp"

namespace strex {

// Trims a bounded region to a subset that packs by integer translations while
// preserving the union of translates (almost everywhere): the region is cut
// cell by cell in a deterministic ring order and earlier material shadows
// later cells.
Region trim_to_packing(const Region& g_tilde);

struct MraStage {
    Region e;
    Rat area;
};

struct MraTrace {
    std::vector<MraStage> stages;
    int terminated_at = 0;
    Region k;
};

// Builds a compact set K with area 1 that tiles by integer translations,
// satisfies A K ⊇ K (checked as area(K \ AK) = 0 plus vertex membership), and
// has the origin interior, by inflating a certified seed Q and trimming each
// new shell to a packing.
MraTrace build_mra_set(const IntMatrix& a, const Region& q, int max_stages = 64);

}  // namespace strex
