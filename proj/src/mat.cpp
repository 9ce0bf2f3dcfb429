#include "strex/mat.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>

namespace strex {

std::string rat_to_string(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational", 1, 1);
    std::string num = s, den = "1";
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    auto valid = [](const std::string& t) {
        if (t.empty()) return false;
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    if (!valid(num) || !valid(den))
        throw ParseError("malformed rational '" + s + "'", 1, 1);
    Int numz(num), denz(den);
    Rat q(numz, denz);
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'", 1, 1);
    q.canonicalize();
    return q;
}

static void check_dim(int n) {
    if (n < 2 || n > 12)
        throw DimensionError("matrix dimension must be between 2 and 12, got " + std::to_string(n));
}

IntMatrix::IntMatrix(int n) : n_(n), e_(n * n, Int(0)) { check_dim(n); }

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    n_ = static_cast<int>(rows.size());
    check_dim(n_);
    e_.reserve(n_ * n_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n_)
            throw DimensionError("matrix rows must all have length n");
        for (long v : r) e_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    IntMatrix m(static_cast<int>(rows.size()));
    for (int i = 0; i < m.n_; ++i) {
        if (static_cast<int>(rows[i].size()) != m.n_)
            throw DimensionError("matrix rows must all have length n");
        for (int j = 0; j < m.n_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (n_ != o.n_) throw DimensionError("matrix product dimension mismatch");
    IntMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            const Int& aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < n_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix r(n_);
    for (int i = 0; i < n_ * n_; ++i) r.e_[i] = -e_[i];
    return r;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Int IntMatrix::trace() const {
    Int t = 0;
    for (int i = 0; i < n_; ++i) t += at(i, i);
    return t;
}

std::vector<Int> IntMatrix::mul_vec(const std::vector<Int>& v) const {
    std::vector<Int> r(n_, Int(0));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

RatVec IntMatrix::mul_vec(const RatVec& v) const {
    RatVec r(n_, Rat(0));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r[i] += Rat(at(i, j)) * v[j];
    return r;
}

std::string IntMatrix::to_text() const {
    std::ostringstream os;
    for (int i = 0; i < n_; ++i) {
        if (i) os << ';';
        for (int j = 0; j < n_; ++j) {
            if (j) os << ',';
            os << at(i, j).get_str();
        }
    }
    return os.str();
}

RatMatrix::RatMatrix(int n) : n_(n), e_(n * n, Rat(0)) { check_dim(n); }

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from(const IntMatrix& m) {
    RatMatrix r(m.n());
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) r.at(i, j) = Rat(m.at(i, j));
    return r;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (n_ != o.n_) throw DimensionError("matrix product dimension mismatch");
    RatMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            const Rat& aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < n_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

RatVec RatMatrix::mul_vec(const RatVec& v) const {
    RatVec r(n_, Rat(0));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

Rat RatMatrix::det() const {
    // Plain rational Gauss elimination; exact since Rat is exact.
    RatMatrix m = *this;
    Rat d(1);
    for (int c = 0; c < n_; ++c) {
        int p = -1;
        for (int r = c; r < n_; ++r)
            if (m.at(r, c) != 0) { p = r; break; }
        if (p < 0) return Rat(0);
        if (p != c) {
            for (int j = 0; j < n_; ++j) std::swap(m.at(p, j), m.at(c, j));
            d = -d;
        }
        d *= m.at(c, c);
        for (int r = c + 1; r < n_; ++r) {
            if (m.at(r, c) == 0) continue;
            Rat f = m.at(r, c) / m.at(c, c);
            for (int j = c; j < n_; ++j) m.at(r, j) -= f * m.at(c, j);
        }
    }
    return d;
}

Rat RatMatrix::inf_norm() const {
    Rat best(0);
    for (int i = 0; i < n_; ++i) {
        Rat s(0);
        for (int j = 0; j < n_; ++j) s += rat_abs(at(i, j));
        best = rat_max(best, s);
    }
    return best;
}

Int det(const IntMatrix& a) {
    // Fraction-free Bareiss elimination: all intermediate values are exact
    // integers, the final pivot is the determinant.
    const int n = a.n();
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = a.at(i, j);
    Int prev(1);
    int swaps = 0;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int p = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[r][k] != 0) { p = r; break; }
            if (p < 0) return Int(0);
            std::swap(m[k], m[p]);
            ++swaps;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m[k][k];
    }
    Int d = m[n - 1][n - 1];
    return (swaps % 2) ? Int(-d) : d;
}

RatMatrix inverse_rational(const IntMatrix& a) {
    const int n = a.n();
    if (det(a) == 0) throw SingularError();
    // Gauss-Jordan over exact rationals on [A | I].
    std::vector<RatVec> m(n, RatVec(2 * n, Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = Rat(a.at(i, j));
        m[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (m[r][c] != 0) { p = r; break; }
        if (p < 0) throw SingularError();
        std::swap(m[c], m[p]);
        Rat piv = m[c][c];
        for (int j = 0; j < 2 * n; ++j) m[c][j] /= piv;
        for (int r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rat f = m[r][c];
            for (int j = 0; j < 2 * n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    RatMatrix inv(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = m[i][n + j];
    return inv;
}

HnfResult hnf_column(const IntMatrix& b) {
    const int n = b.n();
    if (det(b) == 0) throw SingularError();
    IntMatrix h = b;
    IntMatrix u = IntMatrix::identity(n);

    auto col_swap = [&](int c1, int c2) {
        for (int i = 0; i < n; ++i) {
            std::swap(h.at(i, c1), h.at(i, c2));
            std::swap(u.at(i, c1), u.at(i, c2));
        }
    };
    auto col_addmul = [&](int dst, int src, const Int& f) {
        for (int i = 0; i < n; ++i) {
            h.at(i, dst) += f * h.at(i, src);
            u.at(i, dst) += f * u.at(i, src);
        }
    };
    auto col_negate = [&](int c) {
        for (int i = 0; i < n; ++i) {
            h.at(i, c) = -h.at(i, c);
            u.at(i, c) = -u.at(i, c);
        }
    };

    for (int i = 0; i < n; ++i) {
        // Euclid on row i over columns i..n-1 until a single nonzero pivot remains.
        for (;;) {
            int nz = -1, cnt = 0;
            Int best;
            for (int c = i; c < n; ++c) {
                if (h.at(i, c) != 0) {
                    ++cnt;
                    if (nz < 0 || int_abs(h.at(i, c)) < best) {
                        nz = c;
                        best = int_abs(h.at(i, c));
                    }
                }
            }
            if (nz < 0) throw SingularError();  // cannot happen for nonsingular b
            if (nz != i) col_swap(i, nz);
            if (cnt == 1) break;
            for (int c = i + 1; c < n; ++c) {
                if (h.at(i, c) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(i, i).get_mpz_t());
                col_addmul(c, i, Int(-q));
            }
        }
        if (h.at(i, i) < 0) col_negate(i);
        // Reduce earlier columns at row i into [0, h[i][i]).
        for (int c = 0; c < i; ++c) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(i, i).get_mpz_t());
            if (q != 0) col_addmul(c, i, Int(-q));
        }
    }
    return {h, u};
}

bool lattice_member(const IntMatrix& b, const RatVec& v) {
    const int n = b.n();
    if (static_cast<int>(v.size()) != n) throw DimensionError("vector length mismatch");
    RatVec y = inverse_rational(b).mul_vec(v);
    for (const Rat& q : y)
        if (!is_integer(q)) return false;
    return true;
}

static IntMatrix int_inverse_unimodular(const IntMatrix& s) {
    // Integer inverse of a determinant +-1 matrix via the rational inverse.
    RatMatrix ri = inverse_rational(s);
    IntMatrix r(s.n());
    for (int i = 0; i < s.n(); ++i)
        for (int j = 0; j < s.n(); ++j) {
            if (!is_integer(ri.at(i, j))) throw NotUnimodularError();
            r.at(i, j) = ri.at(i, j).get_num();
        }
    return r;
}

IntMatrix conjugate(const IntMatrix& a, const IntMatrix& s) {
    if (a.n() != s.n()) throw DimensionError("conjugation dimension mismatch");
    Int ds = det(s);
    if (ds != 1 && ds != -1) throw NotUnimodularError();
    return s * a * int_inverse_unimodular(s);
}

namespace {

std::string key_of(const IntMatrix& m) { return m.to_text(); }

FormKind classify_form(const IntMatrix& m) {
    Int b = m.at(0, 1), c = m.at(1, 0);
    Int ad = int_abs(Int(m.at(0, 0) - m.at(1, 1)));
    if (b == 0 && c == 0) return FormKind::TypeIII;
    if (b == 0 && int_abs(c) >= ad) return FormKind::TypeII;
    if (int_abs(b) >= ad && int_abs(c) >= ad) return FormKind::TypeI;
    return FormKind::Unknown;
}

int kind_rank(FormKind k) {
    switch (k) {
        case FormKind::TypeIII: return 0;
        case FormKind::TypeII: return 1;
        case FormKind::TypeI: return 2;
        default: return 3;
    }
}

}  // namespace

Form2D reduce_gl2(const IntMatrix& a, int depth) {
    if (a.n() != 2) throw DimensionError("reduce_gl2 requires a 2x2 matrix");

    const std::vector<IntMatrix> gens = {
        IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{1, -1}, {0, 1}},
        IntMatrix{{1, 0}, {1, 1}}, IntMatrix{{1, 0}, {-1, 1}},
        IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{1, 0}, {0, -1}},
    };

    Int mag(16);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) mag = std::max(mag, Int(8 * int_abs(a.at(i, j))));

    struct Node {
        IntMatrix m;
        IntMatrix conj;  // conj * a * conj^{-1} == m
        int depth;
    };

    std::map<std::string, int> seen;
    std::deque<Node> queue;
    queue.push_back({a, IntMatrix::identity(2), 0});
    seen[key_of(a)] = 0;

    bool have_best = false;
    Node best{a, IntMatrix::identity(2), 0};
    auto score = [](const Node& nd) {
        const IntMatrix& m = nd.m;
        Int bc = int_abs(m.at(0, 1)) + int_abs(m.at(1, 0));
        Int ad = int_abs(Int(m.at(0, 0) - m.at(1, 1)));
        return std::tuple<int, Int, Int, int, std::string>(
            kind_rank(classify_form(m)), bc, ad, nd.depth, key_of(m));
    };

    while (!queue.empty()) {
        Node nd = queue.front();
        queue.pop_front();
        if (classify_form(nd.m) != FormKind::Unknown) {
            if (!have_best || score(nd) < score(best)) {
                best = nd;
                have_best = true;
            }
        }
        if (nd.depth >= depth) continue;
        for (const IntMatrix& g : gens) {
            IntMatrix m2 = conjugate(nd.m, g);
            bool ok = true;
            for (int i = 0; i < 2 && ok; ++i)
                for (int j = 0; j < 2 && ok; ++j)
                    if (int_abs(m2.at(i, j)) > mag) ok = false;
            if (!ok) continue;
            auto k = key_of(m2);
            if (seen.count(k)) continue;
            seen[k] = nd.depth + 1;
            queue.push_back({m2, g * nd.conj, nd.depth + 1});
        }
    }

    Form2D out;
    if (!have_best) {
        out.kind = FormKind::Unknown;
        out.matrix = a;
        out.conjugator = IntMatrix::identity(2);
        return out;
    }
    out.kind = classify_form(best.m);
    out.matrix = best.m;
    out.conjugator = best.conj;
    // Exact identity check before returning.
    if (!(conjugate(a, out.conjugator) == out.matrix))
        throw Error("internal: reduce_gl2 conjugation identity failed");
    return out;
}

std::optional<CompanionReduction> companion_reduce(const IntMatrix& a, long cap) {
    if (a.n() != 2) throw DimensionError("companion_reduce requires a 2x2 matrix");
    Int d = det(a), t = a.trace();

    auto try_v = [&](long v1, long v2) -> std::optional<CompanionReduction> {
        Int g = gcd(Int(v1), Int(v2));
        if (g != 1 && g != -1) return std::nullopt;
        std::vector<Int> v = {Int(v1), Int(v2)};
        std::vector<Int> av = a.mul_vec(v);
        Int dd = v[0] * av[1] - v[1] * av[0];
        if (dd != 1 && dd != -1) return std::nullopt;
        // Basis (A - tI)v, v puts A into the companion shape.
        std::vector<Int> w = {av[0] - t * v[0], av[1] - t * v[1]};
        IntMatrix p = IntMatrix::from_rows({{w[0], v[0]}, {w[1], v[1]}});
        IntMatrix s = int_inverse_unimodular(p);
        IntMatrix c = conjugate(a, s);
        IntMatrix want = IntMatrix::from_rows({{Int(0), Int(1)}, {Int(-d), t}});
        if (!(c == want)) throw Error("internal: companion reduction identity failed");
        return CompanionReduction{d, t, s};
    };

    for (long r = 1; r <= cap; ++r) {
        // v1 = 0 first so already-companion matrices reduce with S = I.
        if (auto res = try_v(0, r)) return res;
        for (long v1 = 1; v1 <= r; ++v1) {
            long lo = (v1 == r) ? -r : -r;
            for (long v2 = lo; v2 <= r; ++v2) {
                if (std::max(std::labs(v1), std::labs(v2)) != r) continue;
                if (auto res = try_v(v1, v2)) return res;
            }
        }
    }
    return std::nullopt;
}

IntMatrix parse_matrix_text(const std::string& text) {
    std::vector<std::vector<Int>> rows;
    int col = 1;
    std::string cur;
    std::vector<Int> row;
    auto flush_entry = [&](int at_col) {
        // trim spaces
        size_t b = cur.find_first_not_of(" \t");
        size_t e = cur.find_last_not_of(" \t");
        if (b == std::string::npos)
            throw ParseError("empty matrix entry", 1, at_col);
        std::string tok = cur.substr(b, e - b + 1);
        size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
        if (i == tok.size())
            throw ParseError("malformed integer '" + tok + "'", 1, at_col);
        for (size_t k = i; k < tok.size(); ++k)
            if (!isdigit(static_cast<unsigned char>(tok[k])))
                throw ParseError("malformed integer '" + tok + "'", 1, at_col);
        row.emplace_back(tok);
        cur.clear();
    };
    int entry_col = 1;
    for (size_t i = 0; i <= text.size(); ++i, ++col) {
        char ch = i < text.size() ? text[i] : ';';
        if (ch == ',') {
            flush_entry(entry_col);
            entry_col = col + 1;
        } else if (ch == ';') {
            flush_entry(entry_col);
            entry_col = col + 1;
            rows.push_back(row);
            row.clear();
            if (i == text.size()) break;
        } else {
            cur += ch;
        }
    }
    if (rows.empty()) throw ParseError("empty matrix", 1, 1);
    size_t n = rows.size();
    for (size_t i = 0; i < rows.size(); ++i)
        if (rows[i].size() != n)
            throw ParseError("matrix is not square: row " + std::to_string(i + 1) + " has " +
                                 std::to_string(rows[i].size()) + " entries, expected " +
                                 std::to_string(n),
                             1, 1);
    if (n < 2 || n > 12) throw ParseError("matrix dimension must be between 2 and 12", 1, 1);
    return IntMatrix::from_rows(rows);
}

}  // namespace strex
