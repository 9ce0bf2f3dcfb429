#pragma once

#include <vector>

#include "strex/geom.hpp"
#include "strex/mat.hpp"

namespace strex {

// Monic characteristic polynomial, coefficients c[0..n] with c[n] = 1 and
// p(x) = sum c[k] x^k; c[0] = (-1)^n det(A).
struct CharPoly {
    std::vector<Int> coeff;
    int degree() const { return static_cast<int>(coeff.size()) - 1; }
};

CharPoly charpoly(const IntMatrix& a);

// Trace/determinant inequality test, 2x2 only.
bool is_expansive_2x2(const IntMatrix& a);

// Exact decision: true iff every eigenvalue has modulus strictly greater
// than 1. Roots exactly on the unit circle count as not expansive.
bool is_expansive(const IntMatrix& a);

// Convex, centrally symmetric rational polygon Q inside [-1/2,1/2]^2 with
// A(Q°) ⊃ Q, certified exactly. The construction is numeric (a truncated
// Lyapunov-type sum gives the shape), the certificate is not.
ConvexBody ellipsoid_seed(const IntMatrix& a, int m_vertices = 16);

}  // namespace strex
