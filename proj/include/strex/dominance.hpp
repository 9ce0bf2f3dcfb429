#pragma once

#include <optional>
#include <vector>

#include "strex/geom.hpp"
#include "strex/mat.hpp"

namespace strex {

// Directed graph on {0..n-1} with an edge (i,j) iff a_ij != 0.
struct Digraph {
    int n = 0;
    std::vector<std::vector<bool>> adj;
};

Digraph digraph_of(const IntMatrix& a);
bool strongly_connected(const Digraph& g);

// min over rows of |a_jj| - sum_{k!=j} |a_jk|; may be <= 0.
Rat dominance_slack(const IntMatrix& a);

// 1/alpha when the slack alpha is positive; the row-sum norm of the inverse
// never exceeds it.
std::optional<Rat> varah_bound(const IntMatrix& a);

// Exact max absolute row sum of A^{-1}.
Rat inf_norm_inverse(const IntMatrix& a);

using SignVector = std::vector<int>;  // entries +-1

// Sign vectors x with |Ax|_inf = 1, found by propagating the forced signs
// along the digraph from x_0 = +1. Either empty or an antipodal pair; when
// empty, |A^{-1}|_inf < 1 is asserted.
std::vector<SignVector> norm_achievers(const IntMatrix& a);

enum class DdVerdict { StrictCube, SurgeryNeeded, NotApplicable };

struct DominanceCert {
    Rat alpha;
    bool strongly_connected = false;
    std::vector<SignVector> achievers;
    DdVerdict verdict = DdVerdict::NotApplicable;
    Rat inf_norm_inv;
};

// Requires an expansive, diagonally dominant (slack >= 1), strongly connected
// matrix. StrictCube when the cube already works, SurgeryNeeded (with the
// achiever pair) when the inverse norm is exactly 1.
DominanceCert classify_dominant(const IntMatrix& a);

// Constructive repair for a 2x2 matrix whose inverse has K-norm exactly 1,
// attained at a single antipodal vertex pair: two small square caps are moved
// by lattice vectors. The result is certified (tiles + strict inclusion)
// before being returned; the cap size is halved on certification failure.
Region surgery(const IntMatrix& a, const ConvexBody& k, int max_halvings = 20);

}  // namespace strex
