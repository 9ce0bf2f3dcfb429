#include <doctest.h>

#include <complex>
#include <vector>

#include "strex/spectral.hpp"
#include "test_support.hpp"

using namespace strex;

namespace {

// Independent floating-point eigensolver: Durand-Kerner on the characteristic
// polynomial. Good enough as an oracle away from the unit circle.
std::vector<std::complex<double>> poly_roots(const std::vector<double>& monic_coeff) {
    const int n = static_cast<int>(monic_coeff.size()) - 1;
    std::vector<std::complex<double>> z(n);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> acc(1, 0);
    for (int i = 0; i < n; ++i) {
        acc *= seed;
        z[i] = acc;
    }
    auto eval = [&](std::complex<double> x) {
        std::complex<double> v = 0;
        for (int k = 0; k <= n; ++k) v = v * x + monic_coeff[k];
        return v;
    };
    for (int iter = 0; iter < 400; ++iter) {
        double moved = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> denom(1, 0);
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= z[i] - z[j];
            std::complex<double> step = eval(z[i]) / denom;
            z[i] -= step;
            moved += std::abs(step);
        }
        if (moved < 1e-13) break;
    }
    return z;
}

double min_root_modulus(const IntMatrix& a) {
    CharPoly p = charpoly(a);
    std::vector<double> c;  // highest degree first
    for (int k = p.degree(); k >= 0; --k) c.push_back(p.coeff[k].get_d());
    double best = 1e300;
    for (auto r : poly_roots(c)) best = std::min(best, std::abs(r));
    return best;
}

}  // namespace

TEST_CASE("characteristic polynomial") {
    CharPoly p = charpoly(IntMatrix{{2, 1, 0}, {0, 2, 1}, {1, 0, 2}});
    REQUIRE(p.degree() == 3);
    CHECK(p.coeff[3] == 1);
    CHECK(p.coeff[2] == -6);  // -trace
    CHECK(p.coeff[0] == -9);  // (-1)^n det
    // (2 - x)^3 = -1 at the roots: p(x) = x^3 - 6x^2 + 12x - 9
    CHECK(p.coeff[1] == 12);
}

TEST_CASE("charpoly constant term matches the determinant") {
    test_rng rng(9001);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng.next() % 4);
        IntMatrix a = random_matrix(rng, n, 6);
        CharPoly p = charpoly(a);
        Int expected = det(a);
        if (n % 2) expected = -expected;
        CHECK(p.coeff[0] == expected);
        CHECK(p.coeff[n] == 1);
    }
}

TEST_CASE("trace-determinant expansiveness test") {
    CHECK(is_expansive_2x2(IntMatrix{{2, 0}, {0, 2}}));
    CHECK_FALSE(is_expansive_2x2(IntMatrix{{2, 1}, {1, 2}}));
    CHECK(is_expansive_2x2(IntMatrix{{0, 1}, {3, 0}}));
    CHECK_THROWS_AS(is_expansive_2x2(IntMatrix::identity(3)), DimensionError);
}

TEST_CASE("exact expansiveness decision") {
    CHECK(is_expansive(IntMatrix{{1, 1}, {-1, 1}}));       // roots 1 +- i
    CHECK_FALSE(is_expansive(IntMatrix{{2, 1}, {1, 2}}));  // roots 1 and 3
    CHECK(is_expansive(IntMatrix{{2, 1, 0}, {0, 2, 1}, {1, 0, 2}}));
    CHECK_FALSE(is_expansive(IntMatrix{{1, 2}, {0, 1}}));  // unit eigenvalues
    CHECK_FALSE(is_expansive(IntMatrix{{0, 1}, {1, 0}}));  // eigenvalues +-1
    CHECK_FALSE(is_expansive(IntMatrix{{3, 0}, {0, 0}}));  // singular
    CHECK(is_expansive(IntMatrix{{-2, 0}, {0, 2}}));
}

TEST_CASE("expansiveness agrees with 2x2 inequality on a window") {
    for (long a = -4; a <= 4; ++a)
        for (long b = -4; b <= 4; ++b)
            for (long c = -4; c <= 4; ++c)
                for (long d = -4; d <= 4; ++d) {
                    IntMatrix m{{a, b}, {c, d}};
                    REQUIRE(is_expansive(m) == is_expansive_2x2(m));
                }
}

TEST_CASE("expansiveness agrees with a floating eigensolver away from the circle") {
    test_rng rng(1311);
    int used = 0;
    for (int trial = 0; trial < 40000 && used < 10000; ++trial) {
        int n = 2 + static_cast<int>(rng.next() % 5);
        IntMatrix a = random_matrix(rng, n, 4);
        double m = min_root_modulus(a);
        if (std::abs(m - 1.0) < 1e-6) continue;  // oracle margin
        ++used;
        REQUIRE(is_expansive(a) == (m > 1.0));
    }
    CHECK(used == 10000);
}

TEST_CASE("contraction seed") {
    SUBCASE("doubling map accepts the quarter diamond") {
        IntMatrix a{{2, 0}, {0, 2}};
        ConvexBody q = ellipsoid_seed(a, 4);
        CHECK(area(q) > 0);
        // The explicit quarter square passes the same certificate.
        ConvexBody square = sym_conv_hull({Vec2(rat(1, 4), Rat(0)), Vec2(Rat(0), rat(1, 4))});
        CHECK(strict_inclusion(a, square));
    }
    SUBCASE("rotation-scaling accepts an octagonal seed") {
        IntMatrix a{{1, 1}, {-1, 1}};
        ConvexBody q = ellipsoid_seed(a, 8);
        // Exactly the certified properties:
        Rat hl = rat(1, 2);
        for (const Vec2& v : q.vertices()) {
            CHECK(rat_abs(v.x) <= hl);
            CHECK(rat_abs(v.y) <= hl);
            bool has_neg = false;
            for (const Vec2& w : q.vertices())
                if (w == -v) has_neg = true;
            CHECK(has_neg);
        }
        CHECK(strict_inclusion(a, q));
    }
    SUBCASE("non-expansive input is rejected by the guard") {
        CHECK_THROWS_AS(ellipsoid_seed(IntMatrix{{2, 1}, {1, 2}}, 8), NotExpansiveError);
    }
    SUBCASE("seeds certify for a few harder matrices") {
        for (const IntMatrix& a : {IntMatrix{{2, 1}, {-1, -2}}, IntMatrix{{0, 1}, {-3, 1}},
                                   IntMatrix{{1, 2}, {-1, 1}}}) {
            ConvexBody q = ellipsoid_seed(a, 16);
            CHECK(strict_inclusion(a, q));
            auto box = bbox(q.region());
            CHECK(box->xmax <= rat(1, 2));
            CHECK(box->xmin >= rat(-1, 2));
        }
    }
}
