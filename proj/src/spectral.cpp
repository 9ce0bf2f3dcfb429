#include "strex/spectral.hpp"

#include <cmath>
#include <vector>

namespace strex {

CharPoly charpoly(const IntMatrix& a) {
    // Faddeev-LeVerrier; the divisions are exact over the integers.
    const int n = a.n();
    IntMatrix m = a;
    std::vector<Int> c(n + 1, Int(0));
    c[n] = 1;
    for (int k = 1; k <= n; ++k) {
        Int tr = m.trace();
        Int ck;
        mpz_divexact(ck.get_mpz_t(), tr.get_mpz_t(), Int(k).get_mpz_t());
        c[n - k] = -ck;
        if (k == n) break;
        IntMatrix shifted = m;
        for (int i = 0; i < n; ++i) shifted.at(i, i) += c[n - k];
        m = a * shifted;
    }
    CharPoly p;
    p.coeff = std::move(c);
    return p;
}

bool is_expansive_2x2(const IntMatrix& a) {
    if (a.n() != 2) throw DimensionError("is_expansive_2x2 requires a 2x2 matrix");
    Int t = a.trace(), d = det(a);
    Int at = int_abs(t);
    return (at <= d && d >= 2) || (at <= -d - 2 && d <= -2);
}

bool is_expansive(const IntMatrix& a) {
    CharPoly p = charpoly(a);
    const int n = p.degree();

    Int p1(0), pm1(0);
    for (int k = 0; k <= n; ++k) {
        p1 += p.coeff[k];
        pm1 += (k % 2) ? Int(-p.coeff[k]) : p.coeff[k];
    }
    // Eigenvalues at +-1 sit on the unit circle.
    if (p1 == 0 || pm1 == 0) return false;

    // Cayley transform: G(w) = (1+w)^n p((1-w)/(1+w)). Every eigenvalue has
    // |lambda| > 1 iff G is strictly Hurwitz, which holds iff the Routh table
    // is nondegenerate with positive first column. Any zero pivot means a
    // Hurwitz minor vanishes, i.e. some |lambda| <= 1.
    std::vector<Int> g(n + 1, Int(0));
    {
        // (1-w)^i * (1+w)^(n-i), accumulated with weight p.coeff[i]
        for (int i = 0; i <= n; ++i) {
            std::vector<Int> poly(1, Int(1));
            auto mul_lin = [&](long c0, long c1) {  // multiply by (c0 + c1 w)
                std::vector<Int> out(poly.size() + 1, Int(0));
                for (size_t k = 0; k < poly.size(); ++k) {
                    out[k] += c0 * poly[k];
                    out[k + 1] += c1 * poly[k];
                }
                poly = std::move(out);
            };
            for (int k = 0; k < i; ++k) mul_lin(1, -1);
            for (int k = i; k < n; ++k) mul_lin(1, 1);
            for (size_t k = 0; k < poly.size(); ++k) g[k] += p.coeff[i] * poly[k];
        }
    }
    if (g[n] < 0)
        for (Int& v : g) v = -v;

    std::vector<Rat> r0, r1;
    for (int k = n; k >= 0; k -= 2) r0.emplace_back(g[k]);
    for (int k = n - 1; k >= 0; k -= 2) r1.emplace_back(g[k]);

    if (r0[0] <= 0) return false;
    for (int row = 2; row <= n; ++row) {
        if (r1.empty() || r1[0] == 0) return false;
        if (r1[0] < 0) return false;
        std::vector<Rat> r2;
        Rat f = r0[0] / r1[0];
        for (size_t j = 0; j + 1 < r0.size() || j + 1 < r1.size(); ++j) {
            Rat a0 = (j + 1 < r0.size()) ? r0[j + 1] : Rat(0);
            Rat b0 = (j + 1 < r1.size()) ? r1[j + 1] : Rat(0);
            r2.push_back(a0 - f * b0);
        }
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    if (r1.empty() || r1[0] <= 0) return false;
    return true;
}

ConvexBody ellipsoid_seed(const IntMatrix& a, int m_vertices) {
    if (a.n() != 2) throw DimensionError("ellipsoid_seed requires a 2x2 matrix");
    if (!is_expansive(a)) throw NotExpansiveError();
    if (m_vertices < 4 || m_vertices % 2 != 0)
        throw GeometryError("m_vertices must be even and at least 4");

    RatMatrix inv = inverse_rational(a);
    double iv[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) iv[i][j] = inv.at(i, j).get_d();

    // P ~ sum over k of (A^-k)^T (A^-k); truncated when terms fall below 1e-12.
    double P[2][2] = {{0, 0}, {0, 0}};
    double T[2][2] = {{1, 0}, {0, 1}};
    for (int it = 0; it < 4096; ++it) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) P[i][j] += T[i][j];
        double N[2][2] = {{0, 0}, {0, 0}};
        // T <- Ainv^T * T * Ainv
        double M[2][2];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) M[i][j] = T[i][0] * iv[0][j] + T[i][1] * iv[1][j];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) N[i][j] = iv[0][i] * M[0][j] + iv[1][i] * M[1][j];
        double mag = std::abs(N[0][0]) + std::abs(N[0][1]) + std::abs(N[1][0]) + std::abs(N[1][1]);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) T[i][j] = N[i][j];
        if (mag < 1e-12) break;
    }

    const int half = m_vertices / 2;
    std::vector<std::pair<double, double>> ray(half);
    double tmax = 1e300;
    for (int j = 0; j < half; ++j) {
        double th = M_PI * j / half;
        double dx = std::cos(th), dy = std::sin(th);
        double q = P[0][0] * dx * dx + 2 * P[0][1] * dx * dy + P[1][1] * dy * dy;
        double s = 1.0 / std::sqrt(q);
        ray[j] = {dx * s, dy * s};
        double m = std::max(std::abs(ray[j].first), std::abs(ray[j].second));
        tmax = std::min(tmax, 0.5 / m);
    }

    const long denom = 1 << 16;
    double t = tmax * 0.95;
    for (int attempt = 0; attempt < 48; ++attempt, t *= 0.75) {
        std::vector<Vec2> pts;
        for (int j = 0; j < half; ++j) {
            long xi = std::lround(ray[j].first * t * denom);
            long yi = std::lround(ray[j].second * t * denom);
            pts.emplace_back(rat(xi, denom), rat(yi, denom));
        }
        ConvexBody q = ConvexBody::make_degenerate();
        try {
            q = sym_conv_hull(pts);
        } catch (const GeometryError&) {
            continue;
        }
        if (q.degenerate()) continue;

        bool ok = true;
        Rat hl = rat(1, 2);
        for (const Vec2& v : q.vertices())
            if (rat_abs(v.x) > hl || rat_abs(v.y) > hl) ok = false;
        if (!ok) continue;
        for (const Vec2& v : q.vertices()) {
            RatVec w = inv.mul_vec({v.x, v.y});
            if (point_side(q, Vec2(w[0], w[1])) != Side::Interior) {
                ok = false;
                break;
            }
        }
        if (ok) return q;
    }
    throw SeedNotFoundError("no certified seed polygon found; try more vertices");
}

}  // namespace strex
