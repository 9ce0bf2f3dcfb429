#include "strex/tiling.hpp"

#include <cassert>

namespace strex {

namespace {

struct KRange {
    long xlo, xhi, ylo, yhi;
};

// Integer translates whose bounding box meets the region's.
KRange self_overlap_range(const BBox& b) {
    KRange r;
    r.xlo = rat_ceil(Rat(b.xmin - b.xmax)).get_si();
    r.xhi = rat_floor(Rat(b.xmax - b.xmin)).get_si();
    r.ylo = rat_ceil(Rat(b.ymin - b.ymax)).get_si();
    r.yhi = rat_floor(Rat(b.ymax - b.ymin)).get_si();
    return r;
}

// Integer k with x + k inside the bounding box.
KRange point_range(const BBox& b, const Vec2& x) {
    KRange r;
    r.xlo = rat_ceil(Rat(b.xmin - x.x)).get_si();
    r.xhi = rat_floor(Rat(b.xmax - x.x)).get_si();
    r.ylo = rat_ceil(Rat(b.ymin - x.y)).get_si();
    r.yhi = rat_floor(Rat(b.ymax - x.y)).get_si();
    return r;
}

RatMatrix int_pow(const IntMatrix& a, int e) {
    IntMatrix m = IntMatrix::identity(a.n());
    for (int i = 0; i < e; ++i) m = m * a;
    return RatMatrix::from(m);
}

RatMatrix matrix_power(const IntMatrix& a, int e) {
    if (e >= 0) return int_pow(a, e);
    RatMatrix inv = inverse_rational(a);
    RatMatrix m = RatMatrix::identity(a.n());
    for (int i = 0; i < -e; ++i) m = m * inv;
    return m;
}

}  // namespace

TileReport verify_packs(const Region& r) {
    TileReport rep;
    rep.area = area(r);
    auto box = bbox(r);
    if (!box) {
        rep.packs = true;
        rep.tiles = false;
        return rep;
    }
    KRange kr = self_overlap_range(*box);
    for (long kx = kr.xlo; kx <= kr.xhi; ++kx)
        for (long ky = kr.ylo; ky <= kr.yhi; ++ky) {
            if (kx == 0 && ky == 0) continue;
            Region shifted = translate(r, Vec2(Rat(kx), Rat(ky)));
            Rat ov = area(region_intersect(r, shifted));
            if (ov != 0) rep.violations.push_back({{kx, ky}, ov});
        }
    rep.packs = rep.violations.empty();
    rep.tiles = rep.packs && rep.area == 1;
    return rep;
}

TileReport verify_tiles(const Region& r) { return verify_packs(r); }

long multiplicity(const Region& r, const Vec2& x) {
    auto box = bbox(r);
    if (!box) return 0;
    KRange kr = point_range(*box, x);
    long count = 0;
    for (long kx = kr.xlo; kx <= kr.xhi; ++kx)
        for (long ky = kr.ylo; ky <= kr.yhi; ++ky)
            if (point_side(r, x + Vec2(Rat(kx), Rat(ky))) != Side::Exterior) ++count;
    return count;
}

std::vector<BoundaryPartner> boundary_partners(const Region& r, const Vec2& x) {
    if (point_side(r, x) != Side::Boundary) throw NotOnBoundaryError();
    if (!verify_tiles(r).tiles) throw NotATileError();
    auto box = bbox(r);
    std::vector<BoundaryPartner> out;
    // y = x - k must land inside the bounding box.
    KRange kr;
    kr.xlo = rat_ceil(Rat(x.x - box->xmax)).get_si();
    kr.xhi = rat_floor(Rat(x.x - box->xmin)).get_si();
    kr.ylo = rat_ceil(Rat(x.y - box->ymax)).get_si();
    kr.yhi = rat_floor(Rat(x.y - box->ymin)).get_si();
    for (long kx = kr.xlo; kx <= kr.xhi; ++kx)
        for (long ky = kr.ylo; ky <= kr.yhi; ++ky) {
            if (kx == 0 && ky == 0) continue;
            Vec2 y = x - Vec2(Rat(kx), Rat(ky));
            if (point_side(r, y) == Side::Boundary) out.push_back({y, {kx, ky}});
        }
    return out;
}

bool dilation_tiling_check(const IntMatrix& a, const Region& r, int big_j) {
    if (a.n() != 2) throw DimensionError("dilation_tiling_check requires a 2x2 matrix");
    if (big_j < 1) throw PreconditionError("J must be at least 1");
    if (det(a) == 0) throw SingularError();
    Region ar = linear_image(r, a);
    if (area(region_diff(r, ar)) != 0)
        throw PreconditionError("A R does not contain R");

    Region w = region_diff(ar, r);
    std::vector<Region> dil;
    for (int j = -big_j; j <= big_j; ++j) dil.push_back(linear_image(w, matrix_power(a, j)));

    for (size_t i = 0; i < dil.size(); ++i)
        for (size_t j = i + 1; j < dil.size(); ++j)
            if (area(region_intersect(dil[i], dil[j])) != 0) return false;

    Rat lhs(0);
    for (const Region& d : dil) lhs += area(d);
    Rat rhs = area(linear_image(r, matrix_power(a, big_j + 1))) -
              area(linear_image(r, matrix_power(a, -big_j)));
    return lhs == rhs;
}

Index2Witness index2_witness(const IntMatrix& b, const Region& r) {
    if (b.n() != 2) throw DimensionError("index2_witness requires a 2x2 matrix");
    Int d = int_abs(det(b));
    if (d != 2) throw HypothesisError("|det B| must be 2");
    if (!regions_equal_ae(r, negate(r))) throw HypothesisError("region is not symmetric");
    if (!verify_tiles(r).tiles) throw HypothesisError("region does not tile");

    // The unique nonzero residue of the column lattice mod 2Z^2, read off the
    // Hermite basis columns.
    HnfResult hnf = hnf_column(b);
    long w1 = 0, w2 = 0;
    for (int attempt = 0; attempt < 3 && w1 == 0 && w2 == 0; ++attempt) {
        Int c1, c2;
        if (attempt < 2) {
            c1 = hnf.h.at(0, attempt);
            c2 = hnf.h.at(1, attempt);
        } else {
            c1 = hnf.h.at(0, 0) + hnf.h.at(0, 1);
            c2 = hnf.h.at(1, 0) + hnf.h.at(1, 1);
        }
        w1 = mpz_odd_p(c1.get_mpz_t()) ? 1 : 0;
        w2 = mpz_odd_p(c2.get_mpz_t()) ? 1 : 0;
    }
    if (w1 == 0 && w2 == 0) throw Error("internal: no odd residue in an index-2 lattice");

    Vec2 x(rat(w1, 2), rat(w2, 2));
    auto box = bbox(r);
    KRange kr = point_range(*box, x);
    for (long kx = kr.xlo; kx <= kr.xhi; ++kx)
        for (long ky = kr.ylo; ky <= kr.yhi; ++ky) {
            Vec2 p = x + Vec2(Rat(kx), Rat(ky));
            if (point_side(r, p) == Side::Exterior) continue;
            Vec2 q = -p;
            Vec2 gamma = p - q;
            if (point_side(r, q) == Side::Exterior)
                throw Error("internal: symmetric region lost -p");
            if (!lattice_member(b, {gamma.x, gamma.y}))
                throw Error("internal: witness difference not in the lattice");
            if (gamma.x == 0 && gamma.y == 0) throw Error("internal: zero witness difference");
            return {p, q, gamma};
        }
    throw Error("internal: tiling region missed x + k for every k");
}

bool nontile_check(const ConvexBody& k, const Rat& z, int case_id, const std::vector<Vec2>& aux) {
    if (k.degenerate()) throw HypothesisError("degenerate body");
    if (rat_abs(z) < rat(1, 2)) throw HypothesisError("|z| must be at least 1/2");
    auto in_k = [&](const Vec2& p) { return point_side(k, p) != Side::Exterior; };
    auto in_k_int = [&](const Vec2& p) { return point_side(k, p) == Side::Interior; };

    switch (case_id) {
        case 1:
            if (!in_k_int(Vec2(Rat(0), z))) throw HypothesisError("(0,z) not interior");
            return true;
        case 2:
            if (!in_k_int(Vec2(z, Rat(0)))) throw HypothesisError("(z,0) not interior");
            return true;
        case 3: {
            if (aux.size() != 2) throw HypothesisError("case 3 needs two points");
            const Vec2 &p1 = aux[0], &p2 = aux[1];
            if (p1.y != z || p2.y != z) throw HypothesisError("points must have second coordinate z");
            if (!in_k(p1)) throw HypothesisError("first point not in K");
            if (!in_k_int(p2)) throw HypothesisError("second point not interior");
            if (sign(Rat(p1.x * p2.x)) >= 0) throw HypothesisError("coordinates must have opposite signs");
            return true;
        }
        case 4: {
            if (aux.size() != 2) throw HypothesisError("case 4 needs two points");
            const Vec2 &p1 = aux[0], &p2 = aux[1];
            if (p1.x != z || p2.x != z) throw HypothesisError("points must have first coordinate z");
            if (!in_k(p1)) throw HypothesisError("first point not in K");
            if (!in_k_int(p2)) throw HypothesisError("second point not interior");
            if (sign(Rat(p1.y * p2.y)) >= 0) throw HypothesisError("coordinates must have opposite signs");
            return true;
        }
        default:
            throw HypothesisError("case must be 1, 2, 3 or 4");
    }
}

}  // namespace strex
