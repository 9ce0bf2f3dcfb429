#include <algorithm>
#include <array>
#include <cassert>
#include <map>
#include <set>
#include <tuple>

#include "strex/geom.hpp"

// Exact boolean operations on regions via a vertical slab decomposition.
//
// Slab boundaries are all vertex x-coordinates plus all proper edge-crossing
// x-coordinates, so inside an open slab no two edges cross and the spanning
// edges are totally ordered by their (y at x0, y at x1) pair. Walking that
// order bottom-up with even-odd parity per input region yields the trapezoid
// cells of the result; adjacent kept cells merge across interior lines, which
// is exactly closed regularization. Cell boundaries are then stitched back
// into simple polygons: vertical pieces cancel between adjacent slabs by 1-D
// interval arithmetic, closed trails are extracted (interior always to the
// left), and every trail is split at repeated vertices into simple cycles.

namespace strex {

namespace {

struct SweepEdge {
    Vec2 a, b;  // a.x < b.x
    int tag;    // 0 = first operand, 1 = second
};

Rat y_at(const SweepEdge& e, const Rat& x) {
    return e.a.y + (e.b.y - e.a.y) * (x - e.a.x) / (e.b.x - e.a.x);
}

struct Cell {
    Rat x0, x1;
    Rat lo0, lo1;  // bottom boundary y at x0, x1
    Rat hi0, hi1;  // top boundary y at x0, x1
};

bool apply_op(BoolOp op, bool pa, bool pb) {
    switch (op) {
        case BoolOp::Union: return pa || pb;
        case BoolOp::Intersect: return pa && pb;
        case BoolOp::Diff: return pa && !pb;
        case BoolOp::Xor: return pa != pb;
    }
    return false;
}

std::vector<Cell> sweep_cells(const Region& ra, const Region& rb, BoolOp op) {
    std::vector<SweepEdge> edges;
    std::vector<std::pair<Vec2, Vec2>> segs;
    std::vector<Rat> xs;

    auto collect = [&](const Region& r, int tag) {
        for (const auto& [a, b] : detail::region_edges(r)) {
            xs.push_back(a.x);
            segs.emplace_back(a, b);
            if (a.x == b.x) continue;  // vertical edges carry no slab parity
            if (a.x < b.x)
                edges.push_back({a, b, tag});
            else
                edges.push_back({b, a, tag});
        }
    };
    collect(ra, 0);
    collect(rb, 1);

    for (size_t i = 0; i < segs.size(); ++i)
        for (size_t j = i + 1; j < segs.size(); ++j) {
            const auto& [p, r] = segs[i];
            const auto& [q, s] = segs[j];
            int d1 = orient(p, r, q), d2 = orient(p, r, s);
            int d3 = orient(q, s, p), d4 = orient(q, s, r);
            if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
                ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
                Rat denom = cross(r - p, s - q);
                Rat t = cross(q - p, s - q) / denom;
                xs.push_back(p.x + t * (r.x - p.x));
            }
        }

    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<Cell> cells;
    for (size_t si = 0; si + 1 < xs.size(); ++si) {
        const Rat& x0 = xs[si];
        const Rat& x1 = xs[si + 1];
        // Edges with the same line over the slab merge into one toggle group.
        std::map<std::pair<Rat, Rat>, std::array<int, 2>> groups;
        for (const SweepEdge& e : edges) {
            if (!(e.a.x <= x0 && e.b.x >= x1)) continue;
            auto& g = groups[{y_at(e, x0), y_at(e, x1)}];
            g[e.tag] ^= 1;
        }
        bool pa = false, pb = false, open = false;
        Rat lo0, lo1;
        for (const auto& [ys, tg] : groups) {
            if (tg[0]) pa = !pa;
            if (tg[1]) pb = !pb;
            bool keep = apply_op(op, pa, pb);
            if (keep && !open) {
                open = true;
                lo0 = ys.first;
                lo1 = ys.second;
            } else if (!keep && open) {
                open = false;
                cells.push_back({x0, x1, lo0, lo1, ys.first, ys.second});
            }
        }
        assert(!pa && !pb && !open);
    }
    return cells;
}

Rat cells_area(const std::vector<Cell>& cells) {
    Rat total(0);
    for (const Cell& c : cells)
        total += (c.x1 - c.x0) * ((c.hi0 - c.lo0) + (c.hi1 - c.lo1)) / 2;
    return total;
}

// Split a closed trail into simple cycles at repeated vertices.
void split_trail(const std::vector<Vec2>& trail, std::vector<std::vector<Vec2>>& cycles) {
    std::vector<Vec2> stack;
    std::map<Vec2, size_t> pos;
    for (const Vec2& v : trail) {
        auto it = pos.find(v);
        if (it == pos.end()) {
            pos[v] = stack.size();
            stack.push_back(v);
            continue;
        }
        size_t p = it->second;
        std::vector<Vec2> cyc(stack.begin() + p, stack.end());
        for (size_t i = 1; i < cyc.size(); ++i) pos.erase(cyc[i]);
        stack.resize(p + 1);
        if (cyc.size() >= 3) cycles.push_back(std::move(cyc));
    }
    assert(stack.size() <= 1);
}

Region stitch(const std::vector<Cell>& cells) {
    std::vector<std::pair<Vec2, Vec2>> dedges;
    std::map<Rat, std::vector<std::tuple<Rat, Rat, int>>> vertical;  // x -> (lo, hi, dir)
    std::map<Rat, std::set<Rat>> breaks;  // x -> all cell corner ys

    for (const Cell& c : cells) {
        Vec2 bl(c.x0, c.lo0), br(c.x1, c.lo1), tr(c.x1, c.hi1), tl(c.x0, c.hi0);
        dedges.emplace_back(bl, br);  // interior above
        dedges.emplace_back(tr, tl);  // interior below
        if (c.lo1 != c.hi1) vertical[c.x1].push_back({c.lo1, c.hi1, +1});
        if (c.lo0 != c.hi0) vertical[c.x0].push_back({c.lo0, c.hi0, -1});
        breaks[c.x0].insert(c.lo0);
        breaks[c.x0].insert(c.hi0);
        breaks[c.x1].insert(c.lo1);
        breaks[c.x1].insert(c.hi1);
    }

    // Vertical pieces: cancel opposite orientations, subdivide at every corner
    // so pinch points become walk vertices.
    for (const auto& [x, items] : vertical) {
        const auto& bset = breaks[x];
        std::vector<Rat> bs(bset.begin(), bset.end());
        for (size_t i = 0; i + 1 < bs.size(); ++i) {
            const Rat& y1 = bs[i];
            const Rat& y2 = bs[i + 1];
            int net = 0;
            for (const auto& [lo, hi, d] : items)
                if (lo <= y1 && hi >= y2) net += d;
            assert(net >= -1 && net <= 1);
            if (net == 1)
                dedges.emplace_back(Vec2(x, y1), Vec2(x, y2));
            else if (net == -1)
                dedges.emplace_back(Vec2(x, y2), Vec2(x, y1));
        }
    }

    // Directed adjacency with deterministic ordering.
    std::map<Vec2, std::vector<size_t>> adj;
    for (size_t i = 0; i < dedges.size(); ++i) adj[dedges[i].first].push_back(i);
    for (auto& [v, list] : adj)
        std::sort(list.begin(), list.end(),
                  [&](size_t i, size_t j) { return dedges[i].second < dedges[j].second; });

    std::vector<bool> used(dedges.size(), false);
    std::map<Vec2, size_t> cursor;  // next unused index into adj lists
    std::vector<std::vector<Vec2>> cycles;

    for (const auto& [start, list0] : adj) {
        for (;;) {
            size_t& c0 = cursor[start];
            while (c0 < list0.size() && used[list0[c0]]) ++c0;
            if (c0 >= list0.size()) break;

            std::vector<Vec2> trail;
            trail.push_back(start);
            Vec2 cur = start;
            for (;;) {
                auto it = adj.find(cur);
                assert(it != adj.end());
                auto& list = it->second;
                size_t& c = cursor[cur];
                while (c < list.size() && used[list[c]]) ++c;
                if (c >= list.size()) {
                    assert(cur == start);
                    break;
                }
                size_t ei = list[c];
                used[ei] = true;
                cur = dedges[ei].second;
                trail.push_back(cur);
            }
            split_trail(trail, cycles);
        }
    }

    std::vector<Polygon> parts;
    parts.reserve(cycles.size());
    for (auto& cyc : cycles) parts.push_back(Polygon::trusted(std::move(cyc)));
    return Region(std::move(parts));
}

}  // namespace

Region boolean_op(const Region& a, const Region& b, BoolOp op) {
    return stitch(sweep_cells(a, b, op));
}

Region regularize(const Region& r) { return boolean_op(r, Region(), BoolOp::Union); }

Rat area(const Region& r) {
    return cells_area(sweep_cells(r, Region(), BoolOp::Union));
}

}  // namespace strex
