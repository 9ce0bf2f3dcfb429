#include <doctest.h>

#include "strex/mat.hpp"
#include "strex/spectral.hpp"
#include "test_support.hpp"

using namespace strex;

TEST_CASE("determinant via fraction-free elimination") {
    CHECK(det(IntMatrix{{2, 0}, {0, 2}}) == 4);
    CHECK(det(IntMatrix{{1, 1}, {-1, 1}}) == 2);
    CHECK(det(IntMatrix{{2, 1, 0}, {0, 2, 1}, {1, 0, 2}}) == 9);
    CHECK(det(IntMatrix{{1, 2}, {2, 4}}) == 0);
}

TEST_CASE("rational inverse is exact") {
    IntMatrix a{{3, 1}, {1, 3}};
    RatMatrix inv = inverse_rational(a);
    CHECK(inv.at(0, 0) == rat(3, 8));
    CHECK(inv.at(0, 1) == rat(-1, 8));
    CHECK(inv.at(1, 0) == rat(-1, 8));
    CHECK(inv.at(1, 1) == rat(3, 8));

    IntMatrix id = IntMatrix::identity(3);
    RatMatrix inv_id = inverse_rational(id);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(inv_id.at(i, j) == Rat(i == j ? 1 : 0));

    IntMatrix b{{2, 1}, {-1, -2}};
    RatMatrix ib = inverse_rational(b);
    CHECK(ib.at(0, 0) == rat(2, 3));
    CHECK(ib.at(0, 1) == rat(1, 3));
    CHECK(ib.at(1, 0) == rat(-1, 3));
    CHECK(ib.at(1, 1) == rat(-2, 3));

    CHECK_THROWS_AS(inverse_rational(IntMatrix{{1, 2}, {2, 4}}), SingularError);
}

TEST_CASE("rational inverse times the matrix is the identity, randomized") {
    test_rng rng(20240817);
    int done = 0;
    while (done < 1000) {
        int n = 2 + static_cast<int>(rng.next() % 5);
        IntMatrix a = random_matrix(rng, n, 5);
        if (det(a) == 0) continue;
        ++done;
        RatMatrix inv = inverse_rational(a);
        RatMatrix prod = inv * RatMatrix::from(a);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) REQUIRE(prod.at(i, j) == Rat(i == j ? 1 : 0));
    }
}

TEST_CASE("column Hermite form") {
    SUBCASE("already reduced") {
        auto [h, u] = hnf_column(IntMatrix{{2, 0}, {0, 1}});
        CHECK(h == IntMatrix{{2, 0}, {0, 1}});
        CHECK(h == IntMatrix{{2, 0}, {0, 1}} * u);
    }
    SUBCASE("identity stays put") {
        auto [h, u] = hnf_column(IntMatrix::identity(4));
        CHECK(h == IntMatrix::identity(4));
        CHECK(u == IntMatrix::identity(4));
    }
    SUBCASE("det-2 basis reduces to the canonical lower-triangular form") {
        IntMatrix b{{1, 1}, {-1, 1}};
        auto [h, u] = hnf_column(b);
        CHECK(int_abs(det(h)) == 2);
        CHECK(h.at(0, 1) == 0);
        CHECK(h.at(0, 0) > 0);
        CHECK(h.at(1, 1) > 0);
        CHECK(h.at(1, 0) >= 0);
        CHECK(h.at(1, 0) < h.at(1, 1));
        CHECK(h == b * u);
        CHECK(int_abs(det(u)) == 1);
        // This particular lattice is the checkerboard: H = [[1,0],[1,2]].
        CHECK(h == IntMatrix{{1, 0}, {1, 2}});
    }
    SUBCASE("same lattice: columns of each lie in the other") {
        test_rng rng(77);
        for (int trial = 0; trial < 50; ++trial) {
            IntMatrix b = random_matrix(rng, 2 + static_cast<int>(rng.next() % 2), 6);
            if (det(b) == 0) continue;
            auto [h, u] = hnf_column(b);
            CHECK(h == b * u);
            for (int j = 0; j < b.n(); ++j) {
                RatVec hc, bc;
                for (int i = 0; i < b.n(); ++i) {
                    hc.emplace_back(h.at(i, j));
                    bc.emplace_back(b.at(i, j));
                }
                CHECK(lattice_member(b, hc));
                CHECK(lattice_member(h, bc));
            }
        }
    }
}

TEST_CASE("lattice membership") {
    IntMatrix b{{2, 0}, {0, 1}};
    CHECK(lattice_member(b, {Rat(2), Rat(3)}));
    CHECK_FALSE(lattice_member(b, {Rat(1), Rat(0)}));
    CHECK(lattice_member(IntMatrix{{1, 1}, {-1, 1}}, {Rat(0), Rat(2)}));
}

TEST_CASE("conjugation by unimodular matrices") {
    IntMatrix a{{2, 3}, {0, 2}};
    CHECK(conjugate(a, IntMatrix::identity(2)) == a);
    IntMatrix swap{{0, 1}, {1, 0}};
    CHECK(conjugate(a, swap) == IntMatrix{{2, 0}, {3, 2}});
    // S*A*S^{-1} for the shear, computed by hand.
    IntMatrix m{{0, 1}, {3, 0}};
    IntMatrix shear{{1, 1}, {0, 1}};
    CHECK(conjugate(m, shear) == IntMatrix{{3, -2}, {3, -3}});
    CHECK_THROWS_AS(conjugate(a, IntMatrix{{2, 0}, {0, 1}}), NotUnimodularError);
}

TEST_CASE("conjugation preserves det and trace") {
    test_rng rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        IntMatrix a = random_matrix(rng, 2, 5);
        IntMatrix s = random_unimodular(rng, 5);
        IntMatrix c = conjugate(a, s);
        CHECK(det(c) == det(a));
        CHECK(c.trace() == a.trace());
    }
}

TEST_CASE("gl2 reduction reaches a typed representative") {
    SUBCASE("diagonal is already type three") {
        Form2D f = reduce_gl2(IntMatrix{{2, 0}, {0, 3}});
        CHECK(f.kind == FormKind::TypeIII);
        CHECK(f.conjugator == IntMatrix::identity(2));
        CHECK(f.matrix == IntMatrix{{2, 0}, {0, 3}});
    }
    SUBCASE("upper triangular swaps to type two") {
        Form2D f = reduce_gl2(IntMatrix{{2, 3}, {0, 2}});
        CHECK(f.kind == FormKind::TypeII);
        CHECK(f.matrix == IntMatrix{{2, 0}, {3, 2}});
    }
    SUBCASE("rotation-like matrix is already type one") {
        Form2D f = reduce_gl2(IntMatrix{{1, 1}, {-1, 1}});
        CHECK(f.kind == FormKind::TypeI);
        CHECK(f.conjugator == IntMatrix::identity(2));
    }
    SUBCASE("reduced representative satisfies its kind's inequalities") {
        test_rng rng(321);
        for (int trial = 0; trial < 60; ++trial) {
            IntMatrix a = random_matrix(rng, 2, 4);
            Form2D f = reduce_gl2(a);
            CHECK(conjugate(a, f.conjugator) == f.matrix);
            Int b = f.matrix.at(0, 1), c = f.matrix.at(1, 0);
            Int ad = int_abs(Int(f.matrix.at(0, 0) - f.matrix.at(1, 1)));
            switch (f.kind) {
                case FormKind::TypeIII:
                    CHECK(b == 0);
                    CHECK(c == 0);
                    break;
                case FormKind::TypeII:
                    CHECK(b == 0);
                    CHECK(int_abs(c) >= ad);
                    break;
                case FormKind::TypeI:
                    CHECK(int_abs(b) >= ad);
                    CHECK(int_abs(c) >= ad);
                    break;
                case FormKind::Unknown:
                    break;
            }
        }
    }
}

TEST_CASE("companion reduction") {
    SUBCASE("already companion") {
        auto r = companion_reduce(IntMatrix{{0, 1}, {-5, 2}});
        REQUIRE(r.has_value());
        CHECK(r->d == 5);
        CHECK(r->t == 2);
        CHECK(r->s == IntMatrix::identity(2));
    }
    SUBCASE("companion with negative determinant") {
        auto r = companion_reduce(IntMatrix{{0, 1}, {3, 0}});
        REQUIRE(r.has_value());
        CHECK(r->d == -3);
        CHECK(r->t == 0);
        CHECK(r->s == IntMatrix::identity(2));
    }
    SUBCASE("diagonal reduces with an explicit cyclic vector") {
        IntMatrix a{{2, 0}, {0, 3}};
        auto r = companion_reduce(a);
        REQUIRE(r.has_value());
        CHECK(r->d == 6);
        CHECK(r->t == 5);
        CHECK(conjugate(a, r->s) == IntMatrix{{0, 1}, {-6, 5}});
    }
    SUBCASE("scalar matrices have no cyclic vector") {
        CHECK_FALSE(companion_reduce(IntMatrix{{2, 0}, {0, 2}}, 10).has_value());
    }
    SUBCASE("reduction identity holds exactly") {
        test_rng rng(55);
        for (int trial = 0; trial < 80; ++trial) {
            IntMatrix a = random_matrix(rng, 2, 5);
            auto r = companion_reduce(a, 20);
            if (!r) continue;
            IntMatrix want = IntMatrix::from_rows({{Int(0), Int(1)}, {Int(-r->d), r->t}});
            CHECK(conjugate(a, r->s) == want);
        }
    }
}

TEST_CASE("matrix text parsing") {
    IntMatrix a = parse_matrix_text("2,1;-1,-2");
    CHECK(a == IntMatrix{{2, 1}, {-1, -2}});
    CHECK(a.to_text() == "2,1;-1,-2");
    CHECK_THROWS_AS(parse_matrix_text("1,2;3"), ParseError);
    CHECK_THROWS_AS(parse_matrix_text("1,x;3,4"), ParseError);
    CHECK_THROWS_AS(parse_matrix_text(""), ParseError);
}
