#include <doctest.h>

#include <cmath>

#include "strex/classify2d.hpp"
#include "strex/mra.hpp"
#include "strex/tiling.hpp"
#include "test_support.hpp"

using namespace strex;

namespace {

// Independent raster oracle in floating point: samples a grid on the torus
// and accepts when all but a boundary-band fraction of points are covered
// exactly once.
bool raster_tiles(const Region& r, int res = 256) {
    struct FPoly {
        std::vector<std::pair<double, double>> vs;
    };
    std::vector<FPoly> polys;
    double perim = 0;
    for (const Polygon& p : r.parts()) {
        FPoly fp;
        const auto& vs = p.vertices();
        for (size_t i = 0; i < vs.size(); ++i) {
            fp.vs.emplace_back(vs[i].x.get_d(), vs[i].y.get_d());
            double dx = Rat(vs[(i + 1) % vs.size()].x - vs[i].x).get_d();
            double dy = Rat(vs[(i + 1) % vs.size()].y - vs[i].y).get_d();
            perim += std::hypot(dx, dy);
        }
        polys.push_back(std::move(fp));
    }
    if (polys.empty()) return false;
    auto inside = [&](double x, double y) {
        int par = 0;
        for (const FPoly& p : polys) {
            bool in = false;
            size_t n = p.vs.size();
            for (size_t i = 0, j = n - 1; i < n; j = i++) {
                auto [xi, yi] = p.vs[i];
                auto [xj, yj] = p.vs[j];
                if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi) in = !in;
            }
            if (in) par ^= 1;
        }
        return par == 1;
    };
    double xmin = 1e18, xmax = -1e18, ymin = 1e18, ymax = -1e18;
    for (const FPoly& p : polys)
        for (auto [x, y] : p.vs) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    long bad = 0;
    for (int i = 0; i < res; ++i)
        for (int j = 0; j < res; ++j) {
            double x = (i + 0.37) / res;
            double y = (j + 0.41) / res;
            int count = 0;
            for (long kx = std::lround(std::floor(xmin - x)) - 1;
                 kx <= std::lround(std::ceil(xmax - x)) + 1; ++kx)
                for (long ky = std::lround(std::floor(ymin - y)) - 1;
                     ky <= std::lround(std::ceil(ymax - y)) + 1; ++ky)
                    if (inside(x + kx, y + ky)) ++count;
            if (count != 1) ++bad;
        }
    return static_cast<double>(bad) / (res * res) <= 2.0 * perim / res;
}

}  // namespace

TEST_CASE("packing verification") {
    SUBCASE("unit cell packs and tiles") {
        TileReport rep = verify_tiles(unit_cell_region());
        CHECK(rep.packs);
        CHECK(rep.area == 1);
        CHECK(rep.tiles);
        CHECK(rep.violations.empty());
    }
    SUBCASE("wide box fails with the expected overlap") {
        Region wide = rect_region(rat(-3, 4), rat(3, 4), rat(-1, 2), rat(1, 2));
        TileReport rep = verify_packs(wide);
        CHECK_FALSE(rep.packs);
        bool found = false;
        for (const TileViolation& v : rep.violations)
            if (v.k[0] == 1 && v.k[1] == 0) {
                found = true;
                CHECK(v.overlap == rat(1, 2));
            }
        CHECK(found);
    }
    SUBCASE("sheared parallelograms pack for any u") {
        for (const Rat& u : {rat(0), rat(-1), rat(7, 3), rat(-29, 50)}) {
            TileReport rep = verify_tiles(parallelogram_tile(u).region());
            CHECK(rep.packs);
            CHECK(rep.tiles);
        }
    }
    SUBCASE("quarter cell packs but does not tile") {
        TileReport rep = verify_tiles(rect_region(rat(-1, 4), rat(1, 4), rat(-1, 4), rat(1, 4)));
        CHECK(rep.packs);
        CHECK_FALSE(rep.tiles);
        CHECK(rep.area == rat(1, 4));
    }
}

TEST_CASE("multiplicity counts") {
    Region cell = unit_cell_region();
    CHECK(multiplicity(cell, Vec2(rat(1, 2), Rat(0))) == 2);
    CHECK(multiplicity(cell, Vec2(rat(1, 2), rat(1, 2))) == 4);
    CHECK(multiplicity(cell, Vec2(0, 0)) == 1);
}

TEST_CASE("multiplicity at least one for tiles, sampled") {
    test_rng rng(31415);
    std::vector<Region> tiles = {unit_cell_region(), parallelogram_tile(rat(-3, 5)).region(),
                                 parallelogram_tile(rat(1, 2)).region()};
    for (const Region& r : tiles) REQUIRE(verify_tiles(r).tiles);
    for (int trial = 0; trial < 10000; ++trial) {
        const Region& r = tiles[rng.next() % tiles.size()];
        Vec2 x = random_point(rng, 3, 16);
        REQUIRE(multiplicity(r, x) >= 1);
    }
}

TEST_CASE("boundary partners") {
    Region cell = unit_cell_region();
    SUBCASE("corner has the three translate partners") {
        auto ps = boundary_partners(cell, Vec2(rat(1, 2), rat(1, 2)));
        CHECK(ps.size() == 3);
        bool seen_opposite = false, seen_left = false, seen_down = false;
        for (const auto& bp : ps) {
            if (bp.y == Vec2(rat(-1, 2), rat(-1, 2))) seen_opposite = true;
            if (bp.y == Vec2(rat(-1, 2), rat(1, 2))) seen_left = true;
            if (bp.y == Vec2(rat(1, 2), rat(-1, 2))) seen_down = true;
        }
        CHECK(seen_opposite);
        CHECK(seen_left);
        CHECK(seen_down);
    }
    SUBCASE("edge midpoint has exactly the opposite-edge partner") {
        auto ps = boundary_partners(cell, Vec2(rat(1, 2), Rat(0)));
        REQUIRE(ps.size() == 1);
        CHECK(ps[0].y == Vec2(rat(-1, 2), Rat(0)));
        CHECK(ps[0].k[0] == 1);
        CHECK(ps[0].k[1] == 0);
    }
    SUBCASE("parallelogram corner has at least two partners") {
        Region par = parallelogram_tile(Rat(0)).region();
        auto ps = boundary_partners(par, Vec2(Rat(1), rat(1, 2)));
        CHECK(ps.size() >= 2);
    }
    SUBCASE("extreme points of convex tiles always have two or more partners") {
        for (const Rat& u : {rat(0), rat(-29, 50), rat(5, 4)}) {
            ConvexBody k = parallelogram_tile(u);
            for (const Vec2& v : k.vertices())
                CHECK(boundary_partners(k.region(), v).size() >= 2);
        }
    }
    SUBCASE("preconditions are enforced") {
        CHECK_THROWS_AS(boundary_partners(cell, Vec2(0, 0)), NotOnBoundaryError);
        Region quarter = rect_region(rat(-1, 4), rat(1, 4), rat(-1, 4), rat(1, 4));
        CHECK_THROWS_AS(boundary_partners(quarter, Vec2(rat(1, 4), Rat(0))), NotATileError);
    }
}

TEST_CASE("exact tiling verdict agrees with the raster oracle") {
    std::vector<Region> tile_corpus, nontile_corpus;
    tile_corpus.push_back(unit_cell_region());
    for (int i = 0; i < 24; ++i)
        tile_corpus.push_back(parallelogram_tile(rat(2 * i - 23, 16)).region());
    // L-shaped rearrangements of the cell: cut a corner square and move it by
    // an integer vector.
    for (int i = 1; i <= 5; ++i) {
        Rat c = rat(i, 12);
        Region cut = rect_region(rat(1, 2) - c, rat(1, 2), rat(1, 2) - c, rat(1, 2));
        Region rest = region_diff(unit_cell_region(), cut);
        Region moved = translate(cut, Vec2(-1, 0));
        tile_corpus.push_back(region_union(rest, moved));
    }
    for (int i = 1; i <= 20; ++i) {
        Rat s = rat(12 + i, 24);  // wrong-size squares
        if (s == rat(1, 2)) continue;
        nontile_corpus.push_back(rect_region(-s, s, rat(-1, 2), rat(1, 2)));
        nontile_corpus.push_back(rect_region(-s, s, -s, s));
    }
    nontile_corpus.push_back(
        region_union(unit_cell_region(), translate(unit_cell_region(), Vec2(rat(1, 3), Rat(0)))));
    tile_corpus.resize(30);
    nontile_corpus.resize(30);

    for (const Region& r : tile_corpus) {
        REQUIRE(verify_tiles(r).tiles);
        REQUIRE(raster_tiles(r));
    }
    for (const Region& r : nontile_corpus) {
        REQUIRE_FALSE(verify_tiles(r).tiles);
        REQUIRE_FALSE(raster_tiles(r));
    }
}

TEST_CASE("dilation tiling check") {
    SUBCASE("doubling the cell telescopes") {
        IntMatrix a{{2, 0}, {0, 2}};
        Region cell = unit_cell_region();
        Region w = region_diff(linear_image(cell, a), cell);
        CHECK(area(w) == 3);
        CHECK(dilation_tiling_check(a, cell, 2));
    }
    SUBCASE("small box also telescopes without tiling") {
        IntMatrix a{{2, 0}, {0, 2}};
        Region q = rect_region(rat(-1, 4), rat(1, 4), rat(-1, 4), rat(1, 4));
        Region w = region_diff(linear_image(q, a), q);
        CHECK(area(w) == rat(3, 16));
        CHECK(dilation_tiling_check(a, q, 2));
    }
    SUBCASE("precondition failure is reported") {
        IntMatrix a{{2, 1}, {-1, -2}};  // A(cell) does not contain cell
        CHECK_THROWS_AS(dilation_tiling_check(a, unit_cell_region(), 1), PreconditionError);
    }
}

TEST_CASE("index-2 witness") {
    SUBCASE("diagonal lattice") {
        auto w = index2_witness(IntMatrix{{2, 0}, {0, 1}}, unit_cell_region());
        CHECK(w.p == Vec2(Rat(0), rat(1, 2)));
        CHECK(w.q == Vec2(Rat(0), rat(-1, 2)));
        CHECK(w.gamma == Vec2(0, 1));
        CHECK(lattice_member(IntMatrix{{2, 0}, {0, 1}}, {w.gamma.x, w.gamma.y}));
    }
    SUBCASE("checkerboard lattice") {
        IntMatrix b{{1, 1}, {-1, 1}};
        auto w = index2_witness(b, unit_cell_region());
        CHECK(point_side(unit_cell_region(), w.p) != Side::Exterior);
        CHECK(point_side(unit_cell_region(), w.q) != Side::Exterior);
        CHECK(w.p - w.q == w.gamma);
        CHECK(lattice_member(b, {w.gamma.x, w.gamma.y}));
        CHECK_FALSE(w.gamma == Vec2(0, 0));
    }
    SUBCASE("wrong determinant is rejected") {
        CHECK_THROWS_AS(index2_witness(IntMatrix{{3, 0}, {0, 1}}, unit_cell_region()),
                        HypothesisError);
    }
    SUBCASE("works across the symmetric tile family") {
        for (const Rat& u : {rat(0), rat(-1), rat(3, 4)}) {
            Region r = parallelogram_tile(u).region();
            for (const IntMatrix& b : {IntMatrix{{2, 0}, {0, 1}}, IntMatrix{{1, 1}, {-1, 1}},
                                       IntMatrix{{0, 1}, {2, 0}}}) {
                auto w = index2_witness(b, r);
                CHECK(lattice_member(b, {w.gamma.x, w.gamma.y}));
                CHECK(point_side(r, w.p) != Side::Exterior);
            }
        }
    }
}

TEST_CASE("convex non-tiling certificate") {
    // Rectangle [-7/10,7/10] x [-6/10,6/10].
    ConvexBody big = sym_conv_hull({Vec2(rat(7, 10), rat(6, 10)), Vec2(rat(-7, 10), rat(6, 10))});
    SUBCASE("case 1: tall interior point") { CHECK(nontile_check(big, rat(11, 20), 1, {})); }
    SUBCASE("boundary point does not satisfy case 1") {
        ConvexBody cube(rect_polygon(rat(-1, 2), rat(1, 2), rat(-1, 2), rat(1, 2)));
        CHECK_THROWS_AS(nontile_check(cube, rat(1, 2), 1, {}), HypothesisError);
    }
    SUBCASE("case 3: opposite-sign pair at the same height") {
        CHECK(nontile_check(big, rat(11, 20), 3,
                            {Vec2(rat(7, 10), rat(11, 20)), Vec2(rat(-1, 10), rat(11, 20))}));
        CHECK_THROWS_AS(
            nontile_check(big, rat(11, 20), 3,
                          {Vec2(rat(7, 10), rat(11, 20)), Vec2(rat(1, 10), rat(11, 20))}),
            HypothesisError);
    }
    SUBCASE("small z is rejected") {
        CHECK_THROWS_AS(nontile_check(big, rat(1, 4), 1, {}), HypothesisError);
    }
}
