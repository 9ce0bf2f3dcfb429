#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "strex/geom.hpp"
#include "strex/mat.hpp"

namespace strex {

// Search budgets; exhausting a cap degrades a verdict to a citation, never to
// a wrong answer.
struct SearchCaps {
    long u_denom_max = 1024;
    int hex_denom_max = 4;
    long companion_cap = 50;
    int reduce_depth = 12;
    int mra_max_stages = 64;
    bool enable_hexagon = true;
};

// The four quantities whose maximum decides whether the sheared parallelogram
// with top edge from (u/2, 1/2) to (u/2+1, 1/2) maps strictly inside itself
// under A^{-1}; signed values nest, absolute values are compared.
std::array<Rat, 4> parallelogram_terms(const IntMatrix& a, const Rat& u);

// max |term| < |det A|, evaluated exactly.
bool parallelogram_criterion(const IntMatrix& a, const Rat& u);

// conv{ +-(u/2,1/2), +-(u/2+1,1/2) }: area 1, tiles for every rational u.
ConvexBody parallelogram_tile(const Rat& u);

// Grid search for a parallelogram witness; sound always, complete up to the
// denominator cap. The returned body re-verifies by strict_inclusion.
std::optional<std::pair<Rat, ConvexBody>> search_parallelogram(const IntMatrix& a,
                                                               const SearchCaps& caps = {});

// Grid search over centrally symmetric hexagons with integer edge-translation
// vectors; every candidate is validated by verify_tiles and strict_inclusion.
std::optional<ConvexBody> search_hexagon(const IntMatrix& a, const SearchCaps& caps = {});

enum class ConvexVerdict { PositiveConvex, ImpossibleConvex };

// For matrices with a repeated eigenvalue a: positive iff |b| < a^2, where b
// is the gcd of the entries of A - aI. nullopt when the char poly is not a
// perfect square.
std::optional<ConvexVerdict> jordan_criterion(const IntMatrix& a);

enum class CompanionVerdict { PositiveConvex, ImpossibleConvex, Fallthrough };

// Companion-parameters verdict table, trace normalized nonnegative.
CompanionVerdict companion_verdict(const Int& d, const Int& t);

// K certified for S*A*S^{-1}; returns S^{-1} K, re-certified for A.
Region transport_witness(const IntMatrix& a, const IntMatrix& s, const Region& k);

// Unimodular S with S*A*S^{-1} = A^T, when a small one exists.
std::optional<IntMatrix> transpose_conjugator(const IntMatrix& a, long cap = 30);

enum class VerdictKind { Positive, PositiveCited, Impossible, Open, NotExpansive };

struct Verdict {
    VerdictKind kind = VerdictKind::Open;
    std::optional<Region> witness;
    std::string note;
};

struct Outcome2D {
    bool expansive = false;
    Int det;
    Int trace;
    Verdict convex_symmetric;
    Verdict general_set;
    std::vector<std::string> notes;
};

// Full decision pipeline for a 2x2 integer matrix: expansiveness, the
// determinant-two obstruction, the repeated-eigenvalue criterion, the
// companion-parameter table, and the reduced-form positives, with witness
// construction attempted for every positive convex verdict.
Outcome2D classify(const IntMatrix& a, const SearchCaps& caps = {});

std::string verdict_kind_name(VerdictKind k);

}  // namespace strex
