#include "strex/geom.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace strex {

int orient(const Vec2& a, const Vec2& b, const Vec2& c) {
    return sign(Rat(cross(b - a, c - a)));
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    if (orient(a, b, p) != 0) return false;
    return rat_min(a.x, b.x) <= p.x && p.x <= rat_max(a.x, b.x) &&
           rat_min(a.y, b.y) <= p.y && p.y <= rat_max(a.y, b.y);
}

bool segments_touch(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
    int d1 = orient(q1, q2, p1);
    int d2 = orient(q1, q2, p2);
    int d3 = orient(p1, p2, q1);
    int d4 = orient(p1, p2, q2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    if (d1 == 0 && on_segment(q1, q2, p1)) return true;
    if (d2 == 0 && on_segment(q1, q2, p2)) return true;
    if (d3 == 0 && on_segment(p1, p2, q1)) return true;
    if (d4 == 0 && on_segment(p1, p2, q2)) return true;
    return false;
}

Polygon Polygon::build(std::vector<Vec2> vs, bool validate) {
    // Drop exact duplicates and straight-through collinear middles.
    auto canonical = [&](std::vector<Vec2> in) {
        std::vector<Vec2> out;
        for (const Vec2& v : in)
            if (out.empty() || !(out.back() == v)) out.push_back(v);
        while (out.size() > 1 && out.front() == out.back()) out.pop_back();
        bool changed = true;
        while (changed && out.size() >= 3) {
            changed = false;
            for (size_t i = 0; i < out.size(); ++i) {
                const Vec2& a = out[(i + out.size() - 1) % out.size()];
                const Vec2& b = out[i];
                const Vec2& c = out[(i + 1) % out.size()];
                if (orient(a, b, c) == 0 && dot(a - b, c - b) < 0) {
                    out.erase(out.begin() + i);
                    changed = true;
                    break;
                }
            }
        }
        return out;
    };
    vs = canonical(std::move(vs));
    if (vs.size() < 3) throw GeometryError("polygon needs at least 3 vertices");

    Rat area2(0);
    for (size_t i = 0; i < vs.size(); ++i)
        area2 += cross(vs[i], vs[(i + 1) % vs.size()]);
    if (area2 == 0) throw GeometryError("polygon has zero area");
    if (area2 < 0) std::reverse(vs.begin(), vs.end());

    // Rotate so the lexicographically smallest vertex is first.
    size_t best = 0;
    for (size_t i = 1; i < vs.size(); ++i)
        if (vs[i] < vs[best]) best = i;
    std::rotate(vs.begin(), vs.begin() + best, vs.end());

    if (validate) {
        const size_t n = vs.size();
        for (size_t i = 0; i < n; ++i) {
            const Vec2 &a = vs[i], &b = vs[(i + 1) % n];
            if (a == b) throw GeometryError("degenerate polygon edge");
            for (size_t j = i + 1; j < n; ++j) {
                const Vec2 &c = vs[j], &d = vs[(j + 1) % n];
                bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
                if (adjacent) {
                    // Adjacent edges may share only the common endpoint.
                    const Vec2& shared = (j == i + 1) ? b : a;
                    const Vec2& e1 = (j == i + 1) ? a : c;
                    const Vec2& e2 = (j == i + 1) ? d : b;
                    if (orient(e1, shared, e2) == 0 && dot(e1 - shared, e2 - shared) > 0)
                        throw GeometryError("polygon has a collinear spike");
                } else if (segments_touch(a, b, c, d)) {
                    throw GeometryError("polygon is not simple");
                }
            }
        }
    }
    Polygon p;
    p.vs_ = std::move(vs);
    return p;
}

Polygon::Polygon(std::vector<Vec2> vs) { *this = build(std::move(vs), true); }

Polygon Polygon::trusted(std::vector<Vec2> vs) {
#ifndef NDEBUG
    return build(std::move(vs), true);
#else
    return build(std::move(vs), false);
#endif
}

Rat Polygon::shoelace_area() const {
    Rat area2(0);
    for (size_t i = 0; i < vs_.size(); ++i)
        area2 += cross(vs_[i], vs_[(i + 1) % vs_.size()]);
    return area2 / 2;
}

Region::Region(std::vector<Polygon> parts) : parts_(std::move(parts)) {
    std::sort(parts_.begin(), parts_.end());
}

Region Region::from_polygon(Polygon p) {
    Region r;
    r.parts_.push_back(std::move(p));
    return r;
}

ConvexBody::ConvexBody(Polygon p) : degenerate_(false) {
    const auto& vs = p.vertices();
    const size_t n = vs.size();
    for (size_t i = 0; i < n; ++i)
        if (orient(vs[i], vs[(i + 1) % n], vs[(i + 2) % n]) <= 0)
            throw GeometryError("body is not strictly convex");
    std::set<Vec2> set(vs.begin(), vs.end());
    for (const Vec2& v : vs)
        if (!set.count(-v)) throw GeometryError("body is not centrally symmetric");
    poly_ = std::move(p);
}

ConvexBody ConvexBody::make_degenerate() { return ConvexBody(); }

const Polygon& ConvexBody::polygon() const {
    if (degenerate_) throw DegenerateError("degenerate body supports only area queries");
    return *poly_;
}

Rat area(const ConvexBody& k) {
    if (k.degenerate()) return Rat(0);
    return k.polygon().shoelace_area();
}

namespace detail {
std::vector<std::pair<Vec2, Vec2>> region_edges(const Region& r) {
    std::vector<std::pair<Vec2, Vec2>> out;
    for (const Polygon& p : r.parts()) {
        const auto& vs = p.vertices();
        for (size_t i = 0; i < vs.size(); ++i)
            out.emplace_back(vs[i], vs[(i + 1) % vs.size()]);
    }
    return out;
}
}  // namespace detail

namespace {

// Primitive integer direction vector of a rational displacement.
std::pair<Int, Int> primitive_dir(const Vec2& d) {
    Int num_x = d.x.get_num() * d.y.get_den();
    Int num_y = d.y.get_num() * d.x.get_den();
    Int g = gcd(num_x, num_y);
    if (g == 0) throw GeometryError("zero direction");
    return {num_x / g, num_y / g};
}

struct IDir {
    Int x, y;
    bool operator==(const IDir& o) const { return x == o.x && y == o.y; }
};

Int icross(const IDir& a, const IDir& b) { return a.x * b.y - a.y * b.x; }
Int idot(const IDir& a, const IDir& b) { return a.x * b.x + a.y * b.y; }

// Counter-clockwise angular order starting from the positive x-axis.
bool angular_less(const IDir& a, const IDir& b) {
    auto half = [](const IDir& d) { return (d.y > 0 || (d.y == 0 && d.x > 0)) ? 0 : 1; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return icross(a, b) > 0;
}

// Parity of region membership at p + eps*w for infinitesimal eps, where no
// region vertex other than p lies on the open ray.
bool ray_parity(const std::vector<std::pair<Vec2, Vec2>>& edges, const Vec2& p, const IDir& w) {
    Vec2 wd(Rat(w.x), Rat(w.y));
    long count = 0;
    for (const auto& [a, b] : edges) {
        if (on_segment(a, b, p)) continue;  // incident edges contribute nothing ahead
        Vec2 q = p + wd;
        int o1 = orient(p, q, a);
        int o2 = orient(p, q, b);
        if (o1 == 0 || o2 == 0 || o1 == o2) continue;
        // Edge line properly crosses the ray line; keep crossings with t > 0.
        Rat denom = cross(wd, b - a);
        Rat t = cross(a - p, b - a) / denom;
        if (t > 0) ++count;
    }
    return (count % 2) != 0;
}

bool dir_is_clean(const std::vector<Vec2>& verts, const Vec2& p, const IDir& w) {
    Vec2 wd(Rat(w.x), Rat(w.y));
    for (const Vec2& q : verts) {
        if (q == p) continue;
        Vec2 d = q - p;
        if (cross(wd, d) == 0 && dot(wd, d) > 0) return false;
    }
    return true;
}

}  // namespace

Side point_side(const Region& r, const Vec2& p) {
    if (r.empty()) return Side::Exterior;
    auto edges = detail::region_edges(r);

    std::vector<IDir> dirs;
    for (const auto& [a, b] : edges) {
        if (!on_segment(a, b, p)) continue;
        if (p != a) {
            auto [x, y] = primitive_dir(a - p);
            dirs.push_back({x, y});
        }
        if (p != b) {
            auto [x, y] = primitive_dir(b - p);
            dirs.push_back({x, y});
        }
    }

    std::vector<Vec2> verts;
    for (const auto& [a, b] : edges) verts.push_back(a);

    if (dirs.empty()) {
        // Not on any edge: one generic ray decides.
        IDir w{1, 0};
        long j = 0;
        while (!dir_is_clean(verts, p, w)) w = IDir{1, Int(++j)};
        return ray_parity(edges, p, w) ? Side::Interior : Side::Exterior;
    }

    std::sort(dirs.begin(), dirs.end(), angular_less);
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());

    // Sample parities in every open angular sector between incident directions.
    bool any_in = false, any_out = false;
    const size_t m = dirs.size();
    for (size_t i = 0; i < m; ++i) {
        const IDir& u = dirs[i];
        const IDir& v = dirs[(i + 1) % m];
        // Family of directions strictly inside the sector from u CCW to v.
        auto candidate = [&](long j) -> IDir {
            if (m == 1 || icross(u, v) < 0 || (icross(u, v) == 0 && idot(u, v) < 0) || u == v) {
                // Sector spans >= pi; the cone (u, perp(u)) lies inside it.
                IDir pu{-u.y, u.x};
                return IDir{u.x * j + pu.x, u.y * j + pu.y};
            }
            return IDir{u.x * j + v.x, u.y * j + v.y};
        };
        long j = 1;
        IDir w = candidate(j);
        while (!dir_is_clean(verts, p, w)) w = candidate(++j);
        if (ray_parity(edges, p, w))
            any_in = true;
        else
            any_out = true;
        if (any_in && any_out) return Side::Boundary;
    }
    if (any_in && !any_out) return Side::Interior;
    return Side::Exterior;
}

Side point_side(const ConvexBody& k, const Vec2& p) {
    const auto& vs = k.vertices();
    const size_t n = vs.size();
    bool on_edge = false;
    for (size_t i = 0; i < n; ++i) {
        int o = orient(vs[i], vs[(i + 1) % n], p);
        if (o < 0) return Side::Exterior;
        if (o == 0) {
            if (on_segment(vs[i], vs[(i + 1) % n], p)) on_edge = true;
            else return Side::Exterior;
        }
    }
    return on_edge ? Side::Boundary : Side::Interior;
}

ConvexBody sym_conv_hull(const std::vector<Vec2>& pts) {
    std::vector<Vec2> all;
    for (const Vec2& p : pts) {
        all.push_back(p);
        all.push_back(-p);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    if (all.size() < 3) return ConvexBody::make_degenerate();

    // Monotone chain with strict turns.
    auto chain = [&](bool lower) {
        std::vector<Vec2> h;
        std::vector<Vec2> seq = all;
        if (!lower) std::reverse(seq.begin(), seq.end());
        for (const Vec2& p : seq) {
            while (h.size() >= 2 && orient(h[h.size() - 2], h.back(), p) <= 0) h.pop_back();
            h.push_back(p);
        }
        return h;
    };
    std::vector<Vec2> lo = chain(true), hi = chain(false);
    lo.pop_back();
    hi.pop_back();
    lo.insert(lo.end(), hi.begin(), hi.end());
    if (lo.size() < 3) return ConvexBody::make_degenerate();
    return ConvexBody(Polygon(std::move(lo)));
}

Rat minkowski_norm(const ConvexBody& k, const Vec2& x) {
    if (k.degenerate()) throw DegenerateError("degenerate body has no norm");
    if (x.x == 0 && x.y == 0) return Rat(0);
    const auto& vs = k.vertices();
    const size_t n = vs.size();
    Rat best_s(0);
    bool found = false;
    for (size_t i = 0; i < n; ++i) {
        const Vec2 &a = vs[i], &b = vs[(i + 1) % n];
        Vec2 nrm = perp(b - a);
        Rat c = dot(nrm, a);
        Rat denom = dot(nrm, x);
        if (denom == 0) continue;
        Rat s = c / denom;
        if (s <= 0) continue;
        Vec2 q = x * s;
        if (on_segment(a, b, q)) {
            if (!found || s > best_s) best_s = s;
            found = true;
        }
    }
    if (!found) throw GeometryError("norm ray does not meet the body boundary");
    return 1 / best_s;
}

Rat operator_norm(const ConvexBody& k, const RatMatrix& m) {
    if (m.n() != 2) throw DimensionError("operator_norm requires a 2x2 matrix");
    Rat best(0);
    for (const Vec2& v : k.vertices()) {
        RatVec w = m.mul_vec({v.x, v.y});
        best = rat_max(best, minkowski_norm(k, Vec2(w[0], w[1])));
    }
    return best;
}

Region translate(const Region& r, const Vec2& v) {
    std::vector<Polygon> parts;
    for (const Polygon& p : r.parts()) {
        std::vector<Vec2> vs;
        for (const Vec2& q : p.vertices()) vs.push_back(q + v);
        parts.push_back(Polygon::trusted(std::move(vs)));
    }
    return Region(std::move(parts));
}

Region linear_image(const Region& r, const RatMatrix& m) {
    if (m.n() != 2) throw DimensionError("linear_image requires a 2x2 matrix");
    if (m.det() == 0) throw SingularError();
    std::vector<Polygon> parts;
    for (const Polygon& p : r.parts()) {
        std::vector<Vec2> vs;
        for (const Vec2& q : p.vertices()) {
            RatVec w = m.mul_vec({q.x, q.y});
            vs.emplace_back(w[0], w[1]);
        }
        parts.push_back(Polygon::trusted(std::move(vs)));
    }
    return Region(std::move(parts));
}

Region linear_image(const Region& r, const IntMatrix& m) {
    return linear_image(r, RatMatrix::from(m));
}

Region scale(const Region& r, const Rat& s) {
    if (s == 0) throw GeometryError("zero scale");
    std::vector<Polygon> parts;
    for (const Polygon& p : r.parts()) {
        std::vector<Vec2> vs;
        for (const Vec2& q : p.vertices()) vs.push_back(q * s);
        parts.push_back(Polygon::trusted(std::move(vs)));
    }
    return Region(std::move(parts));
}

Region negate(const Region& r) { return scale(r, Rat(-1)); }

bool regions_equal_ae(const Region& a, const Region& b) {
    return area(region_xor(a, b)) == 0;
}

std::optional<BBox> bbox(const Region& r) {
    if (r.empty()) return std::nullopt;
    BBox box;
    bool first = true;
    for (const Polygon& p : r.parts())
        for (const Vec2& v : p.vertices()) {
            if (first) {
                box = {v.x, v.x, v.y, v.y};
                first = false;
            } else {
                box.xmin = rat_min(box.xmin, v.x);
                box.xmax = rat_max(box.xmax, v.x);
                box.ymin = rat_min(box.ymin, v.y);
                box.ymax = rat_max(box.ymax, v.y);
            }
        }
    return box;
}

Polygon rect_polygon(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1) {
    return Polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

Region rect_region(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1) {
    return Region::from_polygon(rect_polygon(x0, x1, y0, y1));
}

Region unit_cell_region() {
    return rect_region(rat(-1, 2), rat(1, 2), rat(-1, 2), rat(1, 2));
}

bool strict_inclusion(const IntMatrix& a, const ConvexBody& k) {
    if (a.n() != 2) throw DimensionError("strict_inclusion requires a 2x2 matrix");
    if (det(a) == 0) throw SingularError();
    RatMatrix inv = inverse_rational(a);
    for (const Vec2& v : k.vertices()) {
        RatVec w = inv.mul_vec({v.x, v.y});
        if (point_side(k, Vec2(w[0], w[1])) != Side::Interior) return false;
    }
    return true;
}

bool strict_inclusion(const IntMatrix& a, const Region& r) {
    if (a.n() != 2) throw DimensionError("strict_inclusion requires a 2x2 matrix");
    if (det(a) == 0) throw SingularError();
    if (r.empty()) return false;
    Region rc = regularize(r);
    Region ri = regularize(linear_image(rc, inverse_rational(a)));

    if (area(region_diff(ri, rc)) != 0) return false;
    for (const Polygon& p : ri.parts())
        for (const Vec2& v : p.vertices())
            if (point_side(rc, v) != Side::Interior) return false;
    auto inner = detail::region_edges(ri);
    auto outer = detail::region_edges(rc);
    for (const auto& [a1, b1] : inner)
        for (const auto& [a2, b2] : outer)
            if (segments_touch(a1, b1, a2, b2)) return false;
    return true;
}

std::string region_to_svg(const Region& r) {
    auto fmt = [](const Rat& q) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.9f", q.get_d());
        return std::string(buf);
    };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-2 -2 4 4\">\n";
    os << "<g transform=\"scale(1,-1)\">\n";
    os << "<rect x=\"-2\" y=\"-2\" width=\"4\" height=\"4\" fill=\"white\"/>\n";
    os << "<path fill-rule=\"evenodd\" fill=\"#4477aa\" stroke=\"#223355\" stroke-width=\"0.01\" d=\"";
    for (const Polygon& p : r.parts()) {
        const auto& vs = p.vertices();
        for (size_t i = 0; i < vs.size(); ++i)
            os << (i == 0 ? "M" : "L") << fmt(vs[i].x) << " " << fmt(vs[i].y) << " ";
        os << "Z ";
    }
    os << "\"/>\n</g>\n</svg>\n";
    return os.str();
}

}  // namespace strex
