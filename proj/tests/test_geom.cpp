#include <doctest.h>

#include "strex/classify2d.hpp"
#include "strex/geom.hpp"
#include "test_support.hpp"

using namespace strex;

namespace {

Region tri_region(Vec2 a, Vec2 b, Vec2 c) { return Region::from_polygon(Polygon({a, b, c})); }

}  // namespace

TEST_CASE("polygon construction and canonicalization") {
    Polygon p({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(p.size() == 4);
    CHECK(p.shoelace_area() == 1);
    // Clockwise input is re-oriented.
    Polygon q({{0, 1}, {1, 1}, {1, 0}, {0, 0}});
    CHECK(p == q);
    // Collinear middle vertices are dropped.
    Polygon r({{0, 0}, {rat(1, 2), Rat(0)}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(r == p);
    CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}}), GeometryError);
    CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}, {2, 0}}), GeometryError);
    // Self-crossing bowtie is rejected.
    CHECK_THROWS_AS(Polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), GeometryError);
}

TEST_CASE("area of regions") {
    CHECK(area(unit_cell_region()) == 1);
    CHECK(area(parallelogram_tile(Rat(0)).region()) == 1);
    ConvexBody seg = sym_conv_hull({Vec2(rat(1, 2), rat(1, 2)), Vec2(rat(-1, 2), rat(-1, 2))});
    CHECK(seg.degenerate());
    CHECK(area(seg) == 0);
    // Even-odd nesting: a square with a square hole.
    Region annulus({rect_polygon(rat(-1, 2), rat(1, 2), rat(-1, 2), rat(1, 2)),
                    rect_polygon(rat(-1, 4), rat(1, 4), rat(-1, 4), rat(1, 4))});
    CHECK(area(annulus) == rat(3, 4));
}

TEST_CASE("symmetric convex hull") {
    ConvexBody diamond = sym_conv_hull({Vec2(rat(1, 2), Rat(0)), Vec2(Rat(0), rat(1, 2))});
    CHECK_FALSE(diamond.degenerate());
    CHECK(area(diamond) == rat(1, 2));
    CHECK(sym_conv_hull({Vec2(1, 0)}).degenerate());
}

TEST_CASE("boolean operations") {
    Region cell = unit_cell_region();
    SUBCASE("difference produces the annulus") {
        Region inner = rect_region(rat(-1, 4), rat(1, 4), rat(-1, 4), rat(1, 4));
        Region ann = region_diff(cell, inner);
        CHECK(area(ann) == rat(3, 4));
        CHECK(point_side(ann, Vec2(0, 0)) == Side::Exterior);
        CHECK(point_side(ann, Vec2(rat(3, 8), Rat(0))) == Side::Interior);
        CHECK(point_side(ann, Vec2(rat(1, 4), Rat(0))) == Side::Boundary);
        // Difference back out: annulus minus cell is empty.
        CHECK(area(region_diff(ann, cell)) == 0);
    }
    SUBCASE("union is idempotent") {
        Region u = region_union(cell, cell);
        CHECK(regions_equal_ae(u, cell));
        CHECK(area(u) == 1);
    }
    SUBCASE("disjoint translates add areas") {
        Region t = translate(cell, Vec2(3, 0));
        CHECK(area(region_union(cell, t)) == 2);
        CHECK(area(region_intersect(cell, t)) == 0);
    }
    SUBCASE("inclusion-exclusion on random boxes and triangles") {
        test_rng rng(4242);
        int done = 0;
        while (done < 500) {
            Region rs[2];
            bool ok = true;
            for (int which = 0; which < 2; ++which) {
                if (rng.next() % 2) {
                    Rat x0 = random_rat(rng, 2, 4), x1 = x0 + rat_abs(random_rat(rng, 2, 4)) + 1;
                    Rat y0 = random_rat(rng, 2, 4), y1 = y0 + rat_abs(random_rat(rng, 2, 4)) + 1;
                    rs[which] = rect_region(x0, x1, y0, y1);
                } else {
                    Vec2 a = random_point(rng, 2, 4), b = random_point(rng, 2, 4),
                         c = random_point(rng, 2, 4);
                    if (orient(a, b, c) == 0) {
                        ok = false;
                        break;
                    }
                    rs[which] = tri_region(a, b, c);
                }
            }
            if (!ok) continue;
            ++done;
            Rat lhs = area(region_union(rs[0], rs[1])) + area(region_intersect(rs[0], rs[1]));
            Rat rhs = area(rs[0]) + area(rs[1]);
            REQUIRE(lhs == rhs);
            REQUIRE(area(region_diff(rs[0], rs[1])) ==
                    area(rs[0]) - area(region_intersect(rs[0], rs[1])));
        }
    }
    SUBCASE("union across a shared edge merges") {
        Region left = rect_region(Rat(0), Rat(1), Rat(0), Rat(1));
        Region right = rect_region(Rat(1), Rat(2), Rat(0), Rat(1));
        Region u = region_union(left, right);
        CHECK(area(u) == 2);
        // The shared edge is interior after regularization.
        CHECK(point_side(u, Vec2(Rat(1), rat(1, 2))) == Side::Interior);
        CHECK(point_side(u, Vec2(1, 0)) == Side::Boundary);
    }
    SUBCASE("pinch points stay on the boundary") {
        Region a = tri_region({0, 0}, {2, 0}, {1, 1});
        Region b = tri_region({1, 1}, {2, 2}, {0, 2});
        Region u = region_union(a, b);
        CHECK(area(u) == area(a) + area(b));
        CHECK(point_side(u, Vec2(1, 1)) == Side::Boundary);
    }
    SUBCASE("hourglass hole splits into simple parts") {
        Region outer = rect_region(Rat(0), Rat(4), Rat(0), Rat(4));
        Region t1 = tri_region({1, 1}, {3, 1}, {2, 2});
        Region t2 = tri_region({1, 3}, {3, 3}, {2, 2});
        Region holes = region_union(t1, t2);
        Region r = region_diff(outer, holes);
        CHECK(area(r) == 16 - 2);
        CHECK(point_side(r, Vec2(2, 2)) == Side::Boundary);
        CHECK(point_side(r, Vec2(Rat(2), rat(3, 2))) == Side::Exterior);
        CHECK(point_side(r, Vec2(rat(1, 2), rat(1, 2))) == Side::Interior);
        for (const Polygon& part : r.parts()) CHECK(part.size() >= 3);
    }
}

TEST_CASE("point classification") {
    Region cell = unit_cell_region();
    CHECK(point_side(cell, Vec2(0, 0)) == Side::Interior);
    CHECK(point_side(cell, Vec2(rat(1, 2), Rat(0))) == Side::Boundary);
    CHECK(point_side(cell, Vec2(1, 1)) == Side::Exterior);
    CHECK(point_side(cell, Vec2(rat(1, 2), rat(1, 2))) == Side::Boundary);
    CHECK(point_side(Region(), Vec2(0, 0)) == Side::Exterior);
}

TEST_CASE("polytope norm") {
    ConvexBody cube(rect_polygon(rat(-1, 2), rat(1, 2), rat(-1, 2), rat(1, 2)));
    CHECK(minkowski_norm(cube, Vec2(rat(1, 2), Rat(0))) == 1);
    CHECK(minkowski_norm(cube, Vec2(rat(1, 4), rat(-1, 8))) == rat(1, 2));
    CHECK(minkowski_norm(cube, Vec2(0, 0)) == 0);
    ConvexBody par = parallelogram_tile(Rat(0));
    CHECK(minkowski_norm(par, Vec2(Rat(1), rat(1, 2))) == 1);

    SUBCASE("norm properties on random inputs") {
        test_rng rng(777);
        for (int trial = 0; trial < 1000; ++trial) {
            Vec2 x = random_point(rng, 3, 6), y = random_point(rng, 3, 6);
            Rat nx = minkowski_norm(cube, x);
            Rat ny = minkowski_norm(cube, y);
            Rat nxy = minkowski_norm(cube, x + y);
            REQUIRE(nxy <= nx + ny);
            Rat s = random_rat(rng, 3, 5);
            if (s != 0) REQUIRE(minkowski_norm(cube, x * s) == rat_abs(s) * nx);
        }
    }
    SUBCASE("vertices have norm one") {
        for (const Vec2& v : par.vertices()) CHECK(minkowski_norm(par, v) == 1);
    }
}

TEST_CASE("operator norm on polytope balls") {
    ConvexBody cube(rect_polygon(rat(-1, 2), rat(1, 2), rat(-1, 2), rat(1, 2)));
    CHECK(operator_norm(cube, inverse_rational(IntMatrix{{3, 1}, {1, 3}})) == rat(1, 2));
    CHECK(operator_norm(cube, inverse_rational(IntMatrix{{2, 1}, {-1, -2}})) == 1);
    CHECK(operator_norm(cube, RatMatrix::identity(2)) == 1);

    SUBCASE("cube operator norm equals the max absolute row sum") {
        test_rng rng(999);
        for (int trial = 0; trial < 100; ++trial) {
            IntMatrix a = random_matrix(rng, 2, 5);
            if (det(a) == 0) continue;
            RatMatrix m = inverse_rational(a);
            CHECK(operator_norm(cube, m) == m.inf_norm());
        }
    }
}

TEST_CASE("strict inclusion") {
    Region cell = unit_cell_region();
    CHECK(strict_inclusion(IntMatrix{{2, 0}, {0, 2}}, cell));
    CHECK_FALSE(strict_inclusion(IntMatrix{{2, 1}, {-1, -2}}, cell));
    CHECK_FALSE(strict_inclusion(IntMatrix{{0, 1}, {3, 0}}, parallelogram_tile(Rat(0)).region()));
    CHECK_THROWS_AS(strict_inclusion(IntMatrix{{1, 2}, {2, 4}}, cell), SingularError);

    SUBCASE("operator norm below one iff strict inclusion, random bodies") {
        test_rng rng(2718);
        int done = 0;
        while (done < 200) {
            IntMatrix a = random_matrix(rng, 2, 4);
            if (det(a) == 0) continue;
            ConvexBody k = parallelogram_tile(random_rat(rng, 3, 8));
            if (rng.next() % 3 == 0)
                k = ConvexBody(rect_polygon(rat(-1, 2), rat(1, 2), rat(-1, 2), rat(1, 2)));
            ++done;
            bool via_norm = operator_norm(k, inverse_rational(a)) < 1;
            bool via_geometry = strict_inclusion(a, k);
            REQUIRE(via_norm == via_geometry);
            // Region route agrees with the convex fast path.
            REQUIRE(strict_inclusion(a, k.region()) == via_geometry);
        }
    }
}

TEST_CASE("affine images") {
    Region cell = unit_cell_region();
    Region moved = translate(cell, Vec2(rat(1, 3), rat(-2, 5)));
    CHECK(area(moved) == 1);
    Region doubled = linear_image(cell, IntMatrix{{2, 0}, {0, 2}});
    CHECK(area(doubled) == 4);
    // Orientation-reversing map still yields valid polygons.
    RatMatrix flip = RatMatrix::identity(2);
    flip.at(0, 0) = -1;
    CHECK(area(linear_image(cell, flip)) == 1);
    CHECK(regions_equal_ae(negate(cell), cell));
}

TEST_CASE("svg output is deterministic") {
    Region cell = unit_cell_region();
    std::string s1 = region_to_svg(cell);
    std::string s2 = region_to_svg(cell);
    CHECK(s1 == s2);
    CHECK(s1.find("viewBox=\"-2 -2 4 4\"") != std::string::npos);
    CHECK(s1.find("evenodd") != std::string::npos);
}
