#include "strex/dominance.hpp"

#include <cassert>
#include <deque>

#include "strex/spectral.hpp"
#include "strex/tiling.hpp"

namespace strex {

Digraph digraph_of(const IntMatrix& a) {
    Digraph g;
    g.n = a.n();
    g.adj.assign(g.n, std::vector<bool>(g.n, false));
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (a.at(i, j) != 0) g.adj[i][j] = true;
    return g;
}

bool strongly_connected(const Digraph& g) {
    // n <= 12: transitive closure is plenty.
    auto reach = g.adj;
    for (int i = 0; i < g.n; ++i) reach[i][i] = true;
    for (int k = 0; k < g.n; ++k)
        for (int i = 0; i < g.n; ++i)
            if (reach[i][k])
                for (int j = 0; j < g.n; ++j)
                    if (reach[k][j]) reach[i][j] = true;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (!reach[i][j]) return false;
    return true;
}

Rat dominance_slack(const IntMatrix& a) {
    Rat best;
    for (int i = 0; i < a.n(); ++i) {
        Int s = int_abs(a.at(i, i));
        for (int j = 0; j < a.n(); ++j)
            if (j != i) s -= int_abs(a.at(i, j));
        Rat row(s);
        if (i == 0 || row < best) best = row;
    }
    return best;
}

std::optional<Rat> varah_bound(const IntMatrix& a) {
    Rat alpha = dominance_slack(a);
    if (alpha <= 0) return std::nullopt;
    return Rat(1 / alpha);
}

Rat inf_norm_inverse(const IntMatrix& a) {
    if (det(a) == 0) throw SingularError();
    return inverse_rational(a).inf_norm();
}

std::vector<SignVector> norm_achievers(const IntMatrix& a) {
    const int n = a.n();
    if (dominance_slack(a) < 1) throw HypothesisError("dominance slack must be at least 1");
    Digraph g = digraph_of(a);
    if (!strongly_connected(g)) throw HypothesisError("digraph must be strongly connected");

    // Any achiever has all coordinates of modulus 1 and satisfies
    // x_j = -sign(x_m a_mm a_mj) along every edge; propagate from x_0 = +1.
    std::vector<int> x(n, 0);
    x[0] = 1;
    std::deque<int> queue = {0};
    bool consistent = true;
    while (!queue.empty() && consistent) {
        int m = queue.front();
        queue.pop_front();
        for (int j = 0; j < n && consistent; ++j) {
            if (j == m || a.at(m, j) == 0) continue;
            int forced = -x[m] * sign(a.at(m, m)) * sign(a.at(m, j));
            if (x[j] == 0) {
                x[j] = forced;
                queue.push_back(j);
            } else if (x[j] != forced) {
                consistent = false;
            }
        }
    }

    std::vector<SignVector> out;
    if (consistent) {
        std::vector<Int> xi(n);
        for (int i = 0; i < n; ++i) {
            assert(x[i] != 0);  // strong connectivity reaches every vertex
            xi[i] = x[i];
        }
        std::vector<Int> ax = a.mul_vec(xi);
        Int norm(0);
        for (const Int& v : ax) norm = std::max(norm, int_abs(v));
        if (norm == 1) {
            SignVector neg(n);
            for (int i = 0; i < n; ++i) neg[i] = -x[i];
            out.push_back(x);
            out.push_back(neg);
        }
    }
    if (out.empty() && !(inf_norm_inverse(a) < 1))
        throw Error("internal: no achiever but inverse norm is not < 1");
    return out;
}

DominanceCert classify_dominant(const IntMatrix& a) {
    DominanceCert cert;
    cert.alpha = dominance_slack(a);
    cert.strongly_connected = strongly_connected(digraph_of(a));
    if (cert.alpha < 1 || !cert.strongly_connected) {
        cert.verdict = DdVerdict::NotApplicable;
        throw HypothesisError("matrix is not diagonally dominant with slack >= 1 and strongly connected");
    }
    if (!is_expansive(a)) throw HypothesisError("matrix is not expansive");
    cert.inf_norm_inv = inf_norm_inverse(a);
    if (cert.inf_norm_inv < 1) {
        cert.verdict = DdVerdict::StrictCube;
    } else if (cert.inf_norm_inv == 1) {
        cert.verdict = DdVerdict::SurgeryNeeded;
        cert.achievers = norm_achievers(a);
        if (cert.achievers.size() != 2)
            throw Error("internal: norm 1 without an achiever pair");
    } else {
        throw Error("internal: dominance slack >= 1 but inverse norm exceeds 1");
    }
    return cert;
}

namespace {

// Exact sup-metric distance from a point to a segment: minimize the maximum
// of two affine absolute values over t in [0,1]; the optimum sits at an
// endpoint or a breakpoint of u, v, u-v, u+v.
Rat dist_inf_point_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
    Rat ux = p.x - a.x, dx = b.x - a.x;
    Rat uy = p.y - a.y, dy = b.y - a.y;
    std::vector<Rat> ts = {Rat(0), Rat(1)};
    if (dx != 0) ts.push_back(ux / dx);
    if (dy != 0) ts.push_back(uy / dy);
    if (dx != dy) ts.push_back((ux - uy) / (dx - dy));
    if (dx != -dy) ts.push_back((ux + uy) / (dx + dy));
    bool first = true;
    Rat best;
    for (const Rat& t : ts) {
        if (t < 0 || t > 1) continue;
        Rat fx = rat_abs(Rat(ux - t * dx));
        Rat fy = rat_abs(Rat(uy - t * dy));
        Rat f = rat_max(fx, fy);
        if (first || f < best) {
            best = f;
            first = false;
        }
    }
    return best;
}

Rat dist_inf_point_region_boundary(const Vec2& p, const Region& r) {
    bool first = true;
    Rat best;
    for (const auto& [a, b] : detail::region_edges(r)) {
        Rat d = dist_inf_point_segment(p, a, b);
        if (first || d < best) {
            best = d;
            first = false;
        }
    }
    if (first) throw GeometryError("empty region has no boundary");
    return best;
}

}  // namespace

Region surgery(const IntMatrix& a, const ConvexBody& k, int max_halvings) {
    if (a.n() != 2) throw DimensionError("surgery requires a 2x2 matrix");
    if (k.degenerate()) throw HypothesisError("degenerate body");
    Region kr = k.region();
    if (!verify_tiles(kr).tiles) throw HypothesisError("body does not tile");

    RatMatrix inv = inverse_rational(a);
    if (!(operator_norm(k, inv) == 1))
        throw HypothesisError("inverse norm on the body is not exactly 1");

    std::vector<Vec2> achieving;
    for (const Vec2& v : k.vertices()) {
        RatVec w = inv.mul_vec({v.x, v.y});
        if (minkowski_norm(k, Vec2(w[0], w[1])) == 1) achieving.push_back(v);
    }
    if (achieving.size() != 2 || achieving[0] != -achieving[1])
        throw HypothesisError("norm must be attained at exactly one antipodal vertex pair");
    Vec2 x0 = achieving[0] < achieving[1] ? achieving[1] : achieving[0];

    // Boundary partner y = x0 + k_lat, y != -x0, smallest lattice shift first.
    std::vector<BoundaryPartner> partners = boundary_partners(kr, x0);
    bool have = false;
    Vec2 y;
    std::array<long, 2> klat{0, 0};
    for (const auto& bp : partners) {
        if (bp.y == -x0) continue;
        std::array<long, 2> shift = {-bp.k[0], -bp.k[1]};  // y = x0 + shift
        if (!have || shift < klat) {
            klat = shift;
            y = bp.y;
            have = true;
        }
    }
    if (!have) throw HypothesisError("no boundary partner other than the antipode");

    Region aik = linear_image(kr, inv);
    if (point_side(aik, x0) != Side::Exterior)
        throw HypothesisError("norm-attaining vertex lies in the contracted body");

    Rat eps1 = dist_inf_point_region_boundary(x0, aik) / 2;
    RatVec w = inv.mul_vec({y.x, y.y});
    Vec2 aiy(w[0], w[1]);
    Rat delta = rat_min(Rat(dist_inf_point_region_boundary(aiy, kr) / 2), eps1);
    Rat eps2 = delta / (2 * inv.inf_norm());
    Rat eps = rat_min(eps1, eps2);

    Vec2 shift{Rat(klat[0]), Rat(klat[1])};
    Rat karea = area(kr);
    for (int attempt = 0; attempt <= max_halvings; ++attempt, eps /= 2) {
        Region cap = region_intersect(kr, rect_region(x0.x - eps, x0.x + eps, x0.y - eps, x0.y + eps));
        Region caps = region_union(cap, negate(cap));
        Region trimmed = region_diff(kr, caps);
        Region moved = region_union(translate(cap, shift), translate(negate(cap), -shift));
        Region t = region_union(trimmed, moved);
        if (area(t) != karea) continue;
        if (!verify_tiles(t).tiles) continue;
        if (!strict_inclusion(a, t)) continue;
        return t;
    }
    throw CertificationError("surgery failed to certify after halving schedule");
}

}  // namespace strex
