#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strex/errors.hpp"
#include "strex/mat.hpp"
#include "strex/rat.hpp"

namespace strex {

struct Vec2 {
    Rat x, y;

    Vec2() : x(0), y(0) {}
    Vec2(Rat x_, Rat y_) : x(std::move(x_)), y(std::move(y_)) {}
    Vec2(long x_, long y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(const Rat& s) const { return {x * s, y * s}; }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Vec2& o) const { return !(*this == o); }
    bool operator<(const Vec2& o) const {
        int c = cmp(x, o.x);
        if (c != 0) return c < 0;
        return cmp(y, o.y) < 0;
    }
};

inline Rat cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Rat dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline Vec2 perp(const Vec2& a) { return {-a.y, a.x}; }

// Sign of the cross product (b-a) x (c-a): +1 left turn, -1 right, 0 collinear.
int orient(const Vec2& a, const Vec2& b, const Vec2& c);

// True iff p lies on the closed segment [a,b].
bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p);

// True iff the closed segments [p1,p2] and [q1,q2] share at least one point.
bool segments_touch(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2);

// Simple polygon with exact rational vertices, stored counter-clockwise,
// canonicalized: no duplicate or collinear-through consecutive vertices,
// rotation fixed at the lexicographically smallest vertex.
class Polygon {
public:
    // Validating constructor: canonicalizes and verifies simplicity.
    explicit Polygon(std::vector<Vec2> vs);
    // For engine output whose simplicity is structural; still canonicalizes.
    static Polygon trusted(std::vector<Vec2> vs);

    const std::vector<Vec2>& vertices() const { return vs_; }
    int size() const { return static_cast<int>(vs_.size()); }
    Rat shoelace_area() const;  // positive (polygon is CCW)

    bool operator==(const Polygon& o) const { return vs_ == o.vs_; }
    bool operator<(const Polygon& o) const { return vs_ < o.vs_; }

private:
    Polygon() = default;
    static Polygon build(std::vector<Vec2> vs, bool validate);
    std::vector<Vec2> vs_;
};

// Finite union of polygons. Membership semantics are even-odd over the parts,
// so nested parts express holes; all parts are stored CCW. Boolean results are
// closed-regularized with pairwise interior-disjoint parts.
class Region {
public:
    Region() = default;
    explicit Region(std::vector<Polygon> parts);
    static Region from_polygon(Polygon p);

    const std::vector<Polygon>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }

    bool operator==(const Region& o) const { return parts_ == o.parts_; }

private:
    std::vector<Polygon> parts_;
};

// Convex, centrally symmetric polygon (a polytope norm unit ball), or a
// flagged degenerate (zero-area) object usable only for area queries.
class ConvexBody {
public:
    explicit ConvexBody(Polygon p);  // validates convexity and symmetry
    static ConvexBody make_degenerate();

    bool degenerate() const { return degenerate_; }
    const Polygon& polygon() const;
    const std::vector<Vec2>& vertices() const { return polygon().vertices(); }
    Region region() const { return Region::from_polygon(polygon()); }

private:
    ConvexBody() : degenerate_(true) {}
    bool degenerate_;
    std::optional<Polygon> poly_;
};

enum class Side { Interior, Boundary, Exterior };

enum class BoolOp { Union, Intersect, Diff, Xor };

// Exact closed-regularized boolean combination via a slab sweep.
Region boolean_op(const Region& a, const Region& b, BoolOp op);

inline Region region_union(const Region& a, const Region& b) { return boolean_op(a, b, BoolOp::Union); }
inline Region region_intersect(const Region& a, const Region& b) { return boolean_op(a, b, BoolOp::Intersect); }
inline Region region_diff(const Region& a, const Region& b) { return boolean_op(a, b, BoolOp::Diff); }
inline Region region_xor(const Region& a, const Region& b) { return boolean_op(a, b, BoolOp::Xor); }

// Canonical re-build: parts become interior-disjoint with true boundary edges.
Region regularize(const Region& r);

// Exact area under even-odd semantics (handles nested hole parts).
Rat area(const Region& r);
Rat area(const ConvexBody& k);

// Exact point classification against the closed region.
Side point_side(const Region& r, const Vec2& p);
Side point_side(const ConvexBody& k, const Vec2& p);

// Convex hull of {±p : p in pts}; Degenerate (zero-area) result when the
// points and their negations are collinear.
ConvexBody sym_conv_hull(const std::vector<Vec2>& pts);

// Minkowski functional of K: min{ lambda >= 0 : x in lambda*K }.
Rat minkowski_norm(const ConvexBody& k, const Vec2& x);

// Operator norm of M on the norm with unit ball K (max over vertices).
Rat operator_norm(const ConvexBody& k, const RatMatrix& m);

// True iff A^{-1} R is contained in the interior of R, checked exactly.
bool strict_inclusion(const IntMatrix& a, const Region& r);
bool strict_inclusion(const IntMatrix& a, const ConvexBody& k);

Region translate(const Region& r, const Vec2& v);
Region linear_image(const Region& r, const RatMatrix& m);
Region linear_image(const Region& r, const IntMatrix& m);
Region scale(const Region& r, const Rat& s);
Region negate(const Region& r);  // point reflection through the origin

// True iff the regions agree up to a set of measure zero.
bool regions_equal_ae(const Region& a, const Region& b);

struct BBox {
    Rat xmin, xmax, ymin, ymax;
};
std::optional<BBox> bbox(const Region& r);

// Axis-aligned rectangle [x0,x1] x [y0,y1] as a Region / Polygon.
Polygon rect_polygon(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1);
Region rect_region(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1);
Region unit_cell_region();  // [-1/2,1/2]^2

// Deterministic SVG rendering, fixed viewBox [-2,2]^2; coordinates are rounded
// for display only and never fed back into computation.
std::string region_to_svg(const Region& r);

namespace detail {
// All directed part edges of a region, in deterministic order.
std::vector<std::pair<Vec2, Vec2>> region_edges(const Region& r);
}  // namespace detail

}  // namespace strex
