#include "strex/mra.hpp"

#include <cassert>

#include "strex/spectral.hpp"
#include "strex/tiling.hpp"

namespace strex {

namespace {

// L-infinity rings around the origin, lexicographic within a ring.
std::vector<std::pair<long, long>> ring_order(long radius) {
    std::vector<std::pair<long, long>> ks;
    for (long r = 0; r <= radius; ++r)
        for (long kx = -r; kx <= r; ++kx)
            for (long ky = -r; ky <= r; ++ky)
                if (std::max(std::labs(kx), std::labs(ky)) == r) ks.emplace_back(kx, ky);
    return ks;
}

long covering_radius(const BBox& box) {
    Rat m = rat_max(rat_max(rat_abs(box.xmin), rat_abs(box.xmax)),
                    rat_max(rat_abs(box.ymin), rat_abs(box.ymax)));
    return rat_ceil(m).get_si() + 1;
}

// Merge regions whose interiors are disjoint by construction: a plain part
// concatenation is exact under even-odd semantics.
Region concat_disjoint(const Region& a, const Region& b) {
    std::vector<Polygon> parts = a.parts();
    parts.insert(parts.end(), b.parts().begin(), b.parts().end());
    return Region(std::move(parts));
}

bool part_meets_box(const Polygon& p, const BBox& box) {
    Rat xmin = p.vertices()[0].x, xmax = xmin, ymin = p.vertices()[0].y, ymax = ymin;
    for (const Vec2& v : p.vertices()) {
        xmin = rat_min(xmin, v.x);
        xmax = rat_max(xmax, v.x);
        ymin = rat_min(ymin, v.y);
        ymax = rat_max(ymax, v.y);
    }
    return !(xmax < box.xmin || box.xmax < xmin || ymax < box.ymin || box.ymax < ymin);
}

// Union of (folded + k) over all k whose translate can meet the target box.
// Translates of a packed base-cell region have disjoint interiors, so parts
// are concatenated directly.
Region unfold_over(const Region& folded, const BBox& target) {
    std::vector<Polygon> parts;
    long xlo = rat_floor(Rat(target.xmin - rat(1, 2))).get_si() - 1;
    long xhi = rat_ceil(Rat(target.xmax + rat(1, 2))).get_si() + 1;
    long ylo = rat_floor(Rat(target.ymin - rat(1, 2))).get_si() - 1;
    long yhi = rat_ceil(Rat(target.ymax + rat(1, 2))).get_si() + 1;
    for (long kx = xlo; kx <= xhi; ++kx)
        for (long ky = ylo; ky <= yhi; ++ky) {
            Region shifted = translate(folded, Vec2(Rat(kx), Rat(ky)));
            for (const Polygon& p : shifted.parts())
                if (part_meets_box(p, target)) parts.push_back(p);
        }
    return Region(std::move(parts));
}

}  // namespace

Region trim_to_packing(const Region& g_tilde) {
    auto box = bbox(g_tilde);
    if (!box) return Region();
    Region cell = unit_cell_region();

    Region g;       // accumulated trimmed region, kept in place
    Region folded;  // the same material folded into the base cell
    for (auto [kx, ky] : ring_order(covering_radius(*box))) {
        Vec2 k{Rat(kx), Rat(ky)};
        Region piece = region_intersect(g_tilde, translate(cell, k));
        if (piece.empty()) continue;
        piece = region_diff(piece, translate(folded, k));
        if (piece.empty() || area(piece) == 0) continue;
        g = concat_disjoint(g, piece);
        folded = concat_disjoint(folded, translate(piece, -k));
    }
    return g;
}

MraTrace build_mra_set(const IntMatrix& a, const Region& q, int max_stages) {
    if (a.n() != 2) throw DimensionError("build_mra_set requires a 2x2 matrix");
    if (!is_expansive(a)) throw PreconditionError("matrix is not expansive");
    if (q.empty()) throw PreconditionError("empty seed");
    {
        auto box = bbox(q);
        Rat hl = rat(1, 2);
        if (box->xmin < -hl || box->xmax > hl || box->ymin < -hl || box->ymax > hl)
            throw PreconditionError("seed must lie inside the half-unit cell");
    }
    if (!strict_inclusion(a, q)) throw PreconditionError("seed is not strictly contracted by A");

    Int dabs = int_abs(det(a));

    MraTrace trace;
    Region folded = q;  // occupied material folded into the base cell (seed packs trivially)
    Region prev = q;
    trace.stages.push_back({q, area(q)});
    Rat cumulative = area(q);

    int stage = 1;
    while (cumulative != 1) {
        if (stage >= max_stages)
            throw NonTerminationError("stage cap reached before the area closed to 1");
        ++stage;
        Region grown = linear_image(prev, a);
        Rat prev_area = area(prev);
        auto gbox = bbox(grown);
        Region shadow = unfold_over(folded, *gbox);
        Region shell = region_diff(grown, shadow);
        // Unconditional growth bound (area scaling).
        assert(area(shell) <= dabs * prev_area);
        (void)dabs;
        (void)prev_area;
        if (shell.empty() || area(shell) == 0)
            throw NonTerminationError("empty shell before the area closed to 1");
        Region trimmed = trim_to_packing(shell);
        trace.stages.push_back({trimmed, area(trimmed)});
        cumulative += area(trimmed);
        if (cumulative > 1) throw Error("internal: packing exceeded unit density");
        // Fold the new material into the base cell; pieces cannot overlap
        // earlier material because the shell already excluded its translates.
        auto tbox = bbox(trimmed);
        if (tbox) {
            for (auto [kx, ky] : ring_order(covering_radius(*tbox))) {
                Region piece = region_intersect(translate(trimmed, Vec2(Rat(-kx), Rat(-ky))),
                                                unit_cell_region());
                if (!piece.empty() && area(piece) != 0) folded = concat_disjoint(folded, piece);
            }
        }
        prev = trimmed;
    }
    trace.terminated_at = stage;

    Region k;
    for (const MraStage& st : trace.stages) k = concat_disjoint(k, st.e);
    trace.k = k;

    // Certification: tiles, A K contains K, origin interior.
    if (!verify_tiles(k).tiles) throw CertificationError("constructed set does not tile");
    Region ak = linear_image(k, a);
    if (area(region_diff(k, ak)) != 0) throw CertificationError("A K does not contain K");
    for (const Polygon& p : k.parts())
        for (const Vec2& v : p.vertices())
            if (point_side(ak, v) == Side::Exterior)
                throw CertificationError("A K misses a vertex of K");
    if (point_side(k, Vec2(Rat(0), Rat(0))) != Side::Interior)
        throw CertificationError("origin is not interior to K");
    return trace;
}

}  // namespace strex
