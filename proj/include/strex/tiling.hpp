#pragma once

#include <array>
#include <vector>

#include "strex/geom.hpp"

namespace strex {

struct TileViolation {
    std::array<long, 2> k;
    Rat overlap;
};

// Verdict of the integer-translate packing/tiling checks.
struct TileReport {
    bool packs = false;
    Rat area = 0;
    bool tiles = false;
    std::vector<TileViolation> violations;
};

// Exact overlap areas against every integer translate whose bounding box
// meets the region's.
TileReport verify_packs(const Region& r);

// tiles iff packs and area = 1: a packing of density one covers almost
// everywhere, so no separate covering check is needed.
TileReport verify_tiles(const Region& r);

// Number of integer translates of R containing x (boundary inclusive).
long multiplicity(const Region& r, const Vec2& x);

struct BoundaryPartner {
    Vec2 y;
    std::array<long, 2> k;  // x - y
};

// All boundary points y with x - y a nonzero integer vector; requires x on
// the boundary of a tiling region.
std::vector<BoundaryPartner> boundary_partners(const Region& r, const Vec2& x);

// With W = A R \ R: verifies the A-dilates of W pack pairwise and satisfy the
// telescoping area identity over j in [-J, J].
bool dilation_tiling_check(const IntMatrix& a, const Region& r, int big_j);

struct Index2Witness {
    Vec2 p, q, gamma;  // p, q in R, p - q = gamma in B*Z^2 \ {0}
};

// For |det B| = 2 and a symmetric tile R, produces two points of R whose
// difference lies in the column lattice of B; certifies that no open superset
// of R packs by that lattice.
Index2Witness index2_witness(const IntMatrix& b, const Region& r);

// Hypothesis-checked non-tiling certificate for convex symmetric bodies.
// Cases: 1: (0,z) interior; 2: (z,0) interior; 3: aux = {(x,z),(y,z)} with the
// first in K, the second interior, x and y of opposite sign; 4: the transpose
// of case 3. Requires |z| >= 1/2. Returns true; throws HypothesisError when
// the chosen case's premises fail.
bool nontile_check(const ConvexBody& k, const Rat& z, int case_id, const std::vector<Vec2>& aux);

}  // namespace strex
