#include "strex/classify2d.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

#include "strex/spectral.hpp"
#include "strex/tiling.hpp"

namespace strex {

std::array<Rat, 4> parallelogram_terms(const IntMatrix& m, const Rat& u) {
    if (m.n() != 2) throw DimensionError("parallelogram_terms requires a 2x2 matrix");
    Rat a(m.at(0, 0)), b(m.at(0, 1)), c(m.at(1, 0)), d(m.at(1, 1));
    Rat u2 = u + 2;
    Rat t1 = -u * c + a;
    Rat t2 = -u2 * c + a;
    Rat t3 = u * d - b + (-1 - u) * t1;
    Rat t4 = u2 * d - b + (-1 - u) * t2;
    return {t1, t2, t3, t4};
}

bool parallelogram_criterion(const IntMatrix& m, const Rat& u) {
    if (det(m) == 0) throw SingularError();
    Rat bound(int_abs(det(m)));
    for (const Rat& t : parallelogram_terms(m, u))
        if (!(rat_abs(t) < bound)) return false;
    return true;
}

ConvexBody parallelogram_tile(const Rat& u) {
    Vec2 v1(u / 2, rat(1, 2));
    Vec2 v2(u / 2 + 1, rat(1, 2));
    return ConvexBody(Polygon({-v2, -v1, v2, v1}));
}

namespace {

struct Interval {
    Rat lo, hi;  // open
    bool empty() const { return !(lo < hi); }
};

Interval intersect(const Interval& a, const Interval& b) {
    return {rat_max(a.lo, b.lo), rat_min(a.hi, b.hi)};
}

}  // namespace

std::optional<std::pair<Rat, ConvexBody>> search_parallelogram(const IntMatrix& m,
                                                               const SearchCaps& caps) {
    if (m.n() != 2) throw DimensionError("search_parallelogram requires a 2x2 matrix");
    Int dd = det(m);
    if (dd == 0) return std::nullopt;
    Rat bound(int_abs(dd));
    Rat a(m.at(0, 0)), c(m.at(1, 0));

    Interval window{rat(-4), rat(2)};
    if (c != 0) {
        // |a - uc| < |det| and |a - (u+2)c| < |det| are linear in u.
        Interval i1{(a - bound) / c, (a + bound) / c};
        if (i1.lo > i1.hi) std::swap(i1.lo, i1.hi);
        Interval i2{i1.lo - 2, i1.hi - 2};
        window = intersect(i1, i2);
        if (window.empty()) return std::nullopt;
    }

    for (long denom = 1; denom <= caps.u_denom_max; denom *= 2) {
        Int lo = rat_floor(Rat(window.lo * denom)) + 1;  // strictly inside the window
        Int hi = rat_ceil(Rat(window.hi * denom)) - 1;
        for (Int p = lo; p <= hi; ++p) {
            if (denom > 1 && mpz_even_p(p.get_mpz_t())) continue;  // seen at a coarser grid
            Rat u(p, Int(denom));
            u.canonicalize();
            if (!parallelogram_criterion(m, u)) continue;
            ConvexBody body = parallelogram_tile(u);
            if (!strict_inclusion(m, body))
                throw Error("internal: criterion and geometry disagree");
            return std::make_pair(u, body);
        }
    }
    return std::nullopt;
}

std::optional<ConvexBody> search_hexagon(const IntMatrix& m, const SearchCaps& caps) {
    if (m.n() != 2) throw DimensionError("search_hexagon requires a 2x2 matrix");
    if (det(m) == 0) return std::nullopt;

    // Edge-translation vector pairs (s, t) with det +-1; the hexagon
    // conv{+-v1, +-v2, +-v3} with v1 = s - v2, v3 = t - v2 tiles by the
    // lattice spanned by s and t when it is a valid convex hexagon. The
    // generic verifiers below are the only source of truth.
    static const std::vector<std::pair<Vec2, Vec2>> pairs = {
        {Vec2(1, 0), Vec2(0, 1)},  {Vec2(1, 0), Vec2(1, 1)},  {Vec2(0, 1), Vec2(1, 1)},
        {Vec2(1, 0), Vec2(-1, 1)}, {Vec2(0, 1), Vec2(-1, 1)}, {Vec2(1, 1), Vec2(-1, 1)},
        {Vec2(1, -1), Vec2(0, 1)}, {Vec2(1, -1), Vec2(1, 1)},
    };

    for (const auto& [s, t] : pairs) {
        for (long q = 2; q <= caps.hex_denom_max; ++q) {
            for (long px = -q; px <= q; ++px) {
                for (long py = -q; py <= q; ++py) {
                    Vec2 v2(rat(px, q), rat(py, q));
                    Vec2 v1 = s - v2;
                    Vec2 v3 = t - v2;
                    std::vector<Vec2> vs = {v1, v2, v3, -v1, -v2, -v3};
                    try {
                        Polygon hex(vs);
                        if (hex.size() != 6) continue;
                        ConvexBody body(hex);
                        if (!(hex.shoelace_area() == 1)) continue;
                        if (!strict_inclusion(m, body)) continue;
                        if (!verify_tiles(body.region()).tiles) continue;
                        return body;
                    } catch (const GeometryError&) {
                        continue;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<ConvexVerdict> jordan_criterion(const IntMatrix& m) {
    if (m.n() != 2) throw DimensionError("jordan_criterion requires a 2x2 matrix");
    Int t = m.trace(), d = det(m);
    Int disc = t * t - 4 * d;
    if (disc != 0) return std::nullopt;
    Int a2 = t / 2;  // t is even when t^2 = 4d
    // b = gcd of the nilpotent part's entries (GL2(Z)-invariant).
    Int g(0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Int e = m.at(i, j) - ((i == j) ? a2 : Int(0));
            g = gcd(g, e);
        }
    if (g < int_abs(a2) * int_abs(a2)) return ConvexVerdict::PositiveConvex;
    return ConvexVerdict::ImpossibleConvex;
}

CompanionVerdict companion_verdict(const Int& d, const Int& t) {
    if (t < 0) throw PreconditionError("companion_verdict expects a nonnegative trace");
    if (d >= 3 && t >= 2) return CompanionVerdict::PositiveConvex;
    if (d <= -3 && t <= -d - 2) return CompanionVerdict::PositiveConvex;
    if (d >= 3 && (t == 0 || t == 1)) return CompanionVerdict::ImpossibleConvex;
    return CompanionVerdict::Fallthrough;
}

Region transport_witness(const IntMatrix& a, const IntMatrix& s, const Region& k) {
    Int ds = det(s);
    if (ds != 1 && ds != -1) throw NotUnimodularError();
    RatMatrix sinv = inverse_rational(s);
    Region moved = linear_image(k, sinv);
    if (!verify_tiles(moved).tiles)
        throw CertificationError("transported witness does not tile");
    if (!strict_inclusion(a, moved))
        throw CertificationError("transported witness fails strict inclusion");
    return moved;
}

std::optional<IntMatrix> transpose_conjugator(const IntMatrix& a, long cap) {
    if (a.n() != 2) throw DimensionError("transpose_conjugator requires a 2x2 matrix");
    IntMatrix at = a.transpose();
    if (a == at) return IntMatrix::identity(2);

    // S A = A^T S is linear in the entries of S; solve for a rational kernel
    // basis of the 4x4 system and look for a small unimodular combination.
    // Unknowns s = (s00, s01, s10, s11).
    Rat A(a.at(0, 0)), B(a.at(0, 1)), C(a.at(1, 0)), D(a.at(1, 1));
    // Rows of the constraint matrix E s = 0 for E = (S A - A^T S) entries.
    std::vector<RatVec> e = {
        // (0,0): s00*A + s01*C - (A*s00 + C*s10)
        {Rat(0), C, -C, Rat(0)},
        // (0,1): s00*B + s01*D - (A*s01 + C*s11)
        {B, D - A, Rat(0), -C},
        // (1,0): s10*A + s11*C - (B*s00 + D*s10)
        {-B, Rat(0), A - D, C},
        // (1,1): s10*B + s11*D - (B*s01 + D*s11)
        {Rat(0), -B, B, Rat(0)},
    };
    // Gaussian elimination to find the kernel.
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < 4 && rank < 4; ++col) {
        int p = -1;
        for (int r = rank; r < 4; ++r)
            if (e[r][col] != 0) { p = r; break; }
        if (p < 0) continue;
        std::swap(e[rank], e[p]);
        Rat piv = e[rank][col];
        for (int j = 0; j < 4; ++j) e[rank][j] /= piv;
        for (int r = 0; r < 4; ++r) {
            if (r == rank || e[r][col] == 0) continue;
            Rat f = e[r][col];
            for (int j = 0; j < 4; ++j) e[r][j] -= f * e[rank][j];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<std::array<Rat, 4>> basis;
    std::vector<bool> is_pivot(4, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int free = 0; free < 4; ++free) {
        if (is_pivot[free]) continue;
        std::array<Rat, 4> v = {Rat(0), Rat(0), Rat(0), Rat(0)};
        v[free] = 1;
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -e[r][free];
        // Clear denominators and divide by the gcd.
        Int lcm(1);
        for (const Rat& q : v) lcm = lcm * q.get_den() / gcd(lcm, Int(q.get_den()));
        std::array<Int, 4> iv;
        Int g(0);
        for (int i = 0; i < 4; ++i) {
            iv[i] = v[i].get_num() * (lcm / v[i].get_den());
            g = gcd(g, iv[i]);
        }
        if (g != 0)
            for (int i = 0; i < 4; ++i) iv[i] /= g;
        basis.push_back({Rat(iv[0]), Rat(iv[1]), Rat(iv[2]), Rat(iv[3])});
    }
    if (basis.empty()) return std::nullopt;

    long range = basis.size() <= 2 ? cap : 8;
    std::vector<long> coef(basis.size(), 0);
    std::function<std::optional<IntMatrix>(size_t)> rec = [&](size_t i) -> std::optional<IntMatrix> {
        if (i == basis.size()) {
            std::array<Rat, 4> s = {Rat(0), Rat(0), Rat(0), Rat(0)};
            for (size_t b = 0; b < basis.size(); ++b)
                for (int j = 0; j < 4; ++j) s[j] += basis[b][j] * coef[b];
            for (const Rat& q : s)
                if (!is_integer(q)) return std::nullopt;
            IntMatrix sm = IntMatrix::from_rows(
                {{s[0].get_num(), s[1].get_num()}, {s[2].get_num(), s[3].get_num()}});
            Int ds = det(sm);
            if (ds != 1 && ds != -1) return std::nullopt;
            if (!(conjugate(a, sm) == at)) return std::nullopt;
            return sm;
        }
        for (long v = 0; v <= range; ++v) {
            for (int sgn_v : {1, -1}) {
                if (v == 0 && sgn_v < 0) continue;
                coef[i] = sgn_v * v;
                if (auto r = rec(i + 1)) return r;
            }
        }
        return std::nullopt;
    };
    return rec(0);
}

std::string verdict_kind_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::Positive: return "positive";
        case VerdictKind::PositiveCited: return "positive_cited";
        case VerdictKind::Impossible: return "impossible";
        case VerdictKind::Open: return "open";
        case VerdictKind::NotExpansive: return "not_expansive";
    }
    return "?";
}

namespace {

// Reduce a nonzero nilpotent part to the elementary shape: returns unimodular
// S with S m S^{-1} = [[a, g],[0, a]], g = gcd of the nilpotent entries > 0.
IntMatrix triangularize_jordan(const IntMatrix& m, const Int& a, const Int& g) {
    IntMatrix n0(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Int e = m.at(i, j) - ((i == j) ? a : Int(0));
            n0.at(i, j) = e / g;
        }
    // n0 = kappa * lambda^T with kappa, lambda primitive integer vectors.
    Int k0 = n0.at(0, 0), k1 = n0.at(1, 0);
    if (k0 == 0 && k1 == 0) {
        k0 = n0.at(0, 1);
        k1 = n0.at(1, 1);
    }
    Int gk = gcd(k0, k1);
    k0 /= gk;
    k1 /= gk;
    // lambda_j = n0[i0][j] / kappa_i0 for some kappa_i0 != 0.
    int i0 = (k0 != 0) ? 0 : 1;
    Int ki = (i0 == 0) ? k0 : k1;
    Int l0 = n0.at(i0, 0) / ki, l1 = n0.at(i0, 1) / ki;
    if (l0 * k0 + l1 * k1 != 0) throw Error("internal: nilpotent factorization failed");
    // f2 with lambda . f2 = 1.
    Int gg, u, v;
    mpz_gcdext(gg.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), l0.get_mpz_t(), l1.get_mpz_t());
    if (gg != 1) throw Error("internal: lambda is not primitive");
    IntMatrix p = IntMatrix::from_rows({{k0, u}, {k1, v}});
    // S = P^{-1}; verify shape and fix the sign of g via diag(1,-1).
    RatMatrix pinv = inverse_rational(p);
    IntMatrix s(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (!is_integer(pinv.at(i, j))) throw Error("internal: basis not unimodular");
            s.at(i, j) = pinv.at(i, j).get_num();
        }
    IntMatrix c = conjugate(m, s);
    if (c.at(0, 1) < 0) {
        IntMatrix flip{{1, 0}, {0, -1}};
        s = flip * s;
        c = conjugate(m, s);
    }
    if (!(c.at(0, 0) == a && c.at(1, 1) == a && c.at(1, 0) == 0 && c.at(0, 1) == g))
        throw Error("internal: triangularization failed");
    return s;
}

// Witness for a matrix m with nonnegative trace, a repeated eigenvalue a >= 2
// and |b| < a^2.
std::optional<Region> jordan_witness(const IntMatrix& m, const SearchCaps& caps) {
    Int t = m.trace();
    Int a = t / 2;
    Int g(0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g = gcd(g, Int(m.at(i, j) - ((i == j) ? a : Int(0))));

    if (g == 0) {
        // Scalar matrix: the half-cube works outright.
        Region cube = unit_cell_region();
        if (strict_inclusion(m, cube)) return cube;
        return std::nullopt;
    }
    IntMatrix s1 = triangularize_jordan(m, a, g);
    IntMatrix j = conjugate(m, s1);  // [[a, g],[0, a]]
    IntMatrix jt = j.transpose();    // [[a, 0],[g, a]]
    IntMatrix swap{{0, 1}, {1, 0}};

    Rat u = (a == 2) ? rat(-29, 50) : Rat(Int(1 - a), a);
    std::optional<std::pair<Rat, ConvexBody>> hit;
    if (parallelogram_criterion(jt, u))
        hit = std::make_pair(u, parallelogram_tile(u));
    else
        hit = search_parallelogram(jt, caps);
    if (!hit) return std::nullopt;

    Region for_j = transport_witness(j, swap, hit->second.region());
    Region for_m = transport_witness(m, s1, for_j);
    return for_m;
}

void add_note(Outcome2D& o, const std::string& tag) {
    if (std::find(o.notes.begin(), o.notes.end(), tag) == o.notes.end()) o.notes.push_back(tag);
}

// Try the constructive witness routes for a positive convex verdict on the
// working matrix w; returns a certified witness for w.
std::optional<Region> convex_witness_search(const IntMatrix& w, const SearchCaps& caps,
                                            Outcome2D& o) {
    if (auto hit = search_parallelogram(w, caps)) {
        add_note(o, "witness-via-parallelogram");
        return hit->second.region();
    }
    if (auto st = transpose_conjugator(w)) {
        if (auto hit = search_parallelogram(w.transpose(), caps)) {
            add_note(o, "witness-via-transpose");
            return transport_witness(w, *st, hit->second.region());
        }
    }
    if (auto cr = companion_reduce(w, caps.companion_cap)) {
        IntMatrix c = conjugate(w, cr->s);
        if (auto hit = search_parallelogram(c, caps)) {
            add_note(o, "witness-via-companion-conjugate");
            return transport_witness(w, cr->s, hit->second.region());
        }
        if (auto stc = transpose_conjugator(c)) {
            if (auto hit = search_parallelogram(c.transpose(), caps)) {
                add_note(o, "witness-via-companion-transpose");
                IntMatrix s = *stc * cr->s;  // s*w*s^{-1} = c^T
                return transport_witness(w, s, hit->second.region());
            }
        }
    }
    if (caps.enable_hexagon) {
        if (auto hex = search_hexagon(w, caps)) {
            add_note(o, "witness-via-hexagon");
            return hex->region();
        }
    }
    return std::nullopt;
}

}  // namespace

Outcome2D classify(const IntMatrix& a, const SearchCaps& caps) {
    if (a.n() != 2) throw DimensionError("classify requires a 2x2 matrix");
    Outcome2D o;
    o.det = det(a);
    o.trace = a.trace();
    o.expansive = is_expansive(a);

    if (!o.expansive) {
        o.convex_symmetric = {VerdictKind::Impossible, std::nullopt, "matrix is not expansive"};
        o.general_set = {VerdictKind::NotExpansive, std::nullopt, ""};
        add_note(o, "not-expansive");
        return o;
    }

    if (int_abs(o.det) == 2) {
        o.convex_symmetric = {VerdictKind::Impossible, std::nullopt,
                              "index-2 image lattice: no symmetric or convex tile admits strict inclusion"};
        o.general_set = {VerdictKind::Open, std::nullopt, "open for determinant of modulus 2"};
        add_note(o, "det-two");
        return o;
    }

    // Work on a reduced representative with nonnegative trace; witnesses are
    // transported back through s0 (and unchanged under negation, since every
    // constructed witness is centrally symmetric).
    Form2D form = reduce_gl2(a, caps.reduce_depth);
    IntMatrix r0 = form.matrix;
    IntMatrix w = r0;
    if (w.trace() < 0) {
        w = -w;
        add_note(o, "negated-for-trace");
    }

    auto attach_positive = [&](const std::string& cited_note) {
        std::optional<Region> witness;
        try {
            witness = convex_witness_search(w, caps, o);
        } catch (const CertificationError&) {
            witness = std::nullopt;
        }
        if (witness) {
            Region for_a = transport_witness(a, form.conjugator, *witness);
            o.convex_symmetric = {VerdictKind::Positive, for_a, ""};
            o.general_set = {VerdictKind::Positive, for_a, ""};
        } else {
            o.convex_symmetric = {VerdictKind::PositiveCited, std::nullopt, cited_note};
            o.general_set = {VerdictKind::PositiveCited, std::nullopt, cited_note};
            add_note(o, "cited");
        }
    };

    // Repeated eigenvalue.
    if (auto jv = jordan_criterion(w)) {
        add_note(o, "jordan");
        if (*jv == ConvexVerdict::ImpossibleConvex) {
            o.convex_symmetric = {VerdictKind::Impossible, std::nullopt,
                                  "repeated eigenvalue a with |b| >= a^2"};
            o.general_set = {VerdictKind::PositiveCited, std::nullopt,
                             "determinant exceeds 2 and the class is not exceptional"};
            return o;
        }
        std::optional<Region> witness;
        try {
            witness = jordan_witness(w, caps);
        } catch (const CertificationError&) {
            witness = std::nullopt;
        }
        if (witness) {
            Region for_a = transport_witness(a, form.conjugator, *witness);
            o.convex_symmetric = {VerdictKind::Positive, for_a, ""};
            o.general_set = {VerdictKind::Positive, for_a, ""};
        } else {
            attach_positive("repeated eigenvalue a with |b| < a^2");
        }
        return o;
    }

    // The char-poly lambda^2 - 3 class is exceptional: record the tension and
    // claim a constructive witness only when a search certifies one.
    bool exceptional = (o.trace == 0 && o.det == -3);
    if (exceptional) {
        add_note(o, "exceptional-class");
        add_note(o, "tension-companion-positive-vs-exclusion");
    }

    if (auto cr = companion_reduce(w, caps.companion_cap)) {
        add_note(o, "companion");
        switch (companion_verdict(cr->d, cr->t)) {
            case CompanionVerdict::PositiveConvex:
                attach_positive("companion parameters in the positive range");
                return o;
            case CompanionVerdict::ImpossibleConvex:
                o.convex_symmetric = {VerdictKind::Impossible, std::nullopt,
                                      "companion parameters d >= 3 with trace 0 or 1"};
                o.general_set = {VerdictKind::PositiveCited, std::nullopt,
                                 "determinant exceeds 2 and the class is not exceptional"};
                return o;
            case CompanionVerdict::Fallthrough:
                add_note(o, "companion-fallthrough");
                break;
        }
    } else if (exceptional) {
        // Class membership follows from the char poly alone.
        attach_positive("companion parameters in the positive range");
        return o;
    }

    // Not companion-reducible within the cap: reduced-form positives.
    switch (form.kind) {
        case FormKind::TypeI:
        case FormKind::TypeIII:
            attach_positive("reduced form with off-diagonal dominance or diagonal");
            return o;
        case FormKind::TypeII: {
            Int adiff = form.matrix.at(0, 0) - form.matrix.at(1, 1);
            if (adiff != 0) {
                attach_positive("reduced lower-triangular form with distinct diagonal");
                return o;
            }
            // Equal diagonal with b = 0 is the repeated-eigenvalue case,
            // already handled.
            break;
        }
        case FormKind::Unknown:
            add_note(o, "reduced-unknown");
            break;
    }

    o.convex_symmetric = {VerdictKind::Open, std::nullopt, "reduction cap exhausted"};
    o.general_set = {VerdictKind::PositiveCited, std::nullopt,
                     "determinant exceeds 2 and the class is not exceptional"};
    return o;
}

}  // namespace strex
