#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strex/errors.hpp"
#include "strex/rat.hpp"

namespace strex {

// Square integer matrix with exact arbitrary-precision entries, 2 <= n <= 12.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(int n);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

    int n() const { return n_; }
    const Int& at(int i, int j) const { return e_[i * n_ + j]; }
    Int& at(int i, int j) { return e_[i * n_ + j]; }

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator-() const;
    bool operator==(const IntMatrix& o) const { return n_ == o.n_ && e_ == o.e_; }

    IntMatrix transpose() const;
    Int trace() const;

    std::vector<Int> mul_vec(const std::vector<Int>& v) const;
    RatVec mul_vec(const RatVec& v) const;

    std::string to_text() const;  // "a,b;c,d" row format

private:
    int n_ = 0;
    std::vector<Int> e_;
};

// Exact rational matrix; used for inverses and witness transport.
class RatMatrix {
public:
    RatMatrix() = default;
    explicit RatMatrix(int n);
    static RatMatrix identity(int n);
    static RatMatrix from(const IntMatrix& m);

    int n() const { return n_; }
    const Rat& at(int i, int j) const { return e_[i * n_ + j]; }
    Rat& at(int i, int j) { return e_[i * n_ + j]; }

    RatMatrix operator*(const RatMatrix& o) const;
    RatVec mul_vec(const RatVec& v) const;
    Rat det() const;

    // Max absolute row sum, the operator norm on the sup-norm ball.
    Rat inf_norm() const;

private:
    int n_ = 0;
    std::vector<Rat> e_;
};

// Exact determinant via fraction-free (Bareiss) elimination.
Int det(const IntMatrix& a);

// Exact inverse; throws SingularError when det = 0.
RatMatrix inverse_rational(const IntMatrix& a);

// Column Hermite normal form: H = B*U with U unimodular, H lower triangular,
// positive diagonal, and 0 <= h[i][j] < h[i][i] for j < i.
struct HnfResult {
    IntMatrix h;
    IntMatrix u;
};
HnfResult hnf_column(const IntMatrix& b);

// True iff v lies in the lattice spanned by the columns of B.
bool lattice_member(const IntMatrix& b, const RatVec& v);

// S*A*S^{-1} for unimodular S; throws NotUnimodularError otherwise.
IntMatrix conjugate(const IntMatrix& a, const IntMatrix& s);

enum class FormKind { TypeI, TypeII, TypeIII, Unknown };

// GL2(Z)-reduced representative: conjugator*A*conjugator^{-1} == matrix.
struct Form2D {
    FormKind kind = FormKind::Unknown;
    IntMatrix matrix;
    IntMatrix conjugator;
};

// Bounded BFS over conjugation by GL2(Z) generators. Candidates matching one of
// the three target shapes are ranked by kind, then |b|+|c|, then |a-d|; Unknown
// when nothing typed is reachable within the depth cap.
Form2D reduce_gl2(const IntMatrix& a, int depth = 12);

struct CompanionReduction {
    Int d;  // det
    Int t;  // trace
    IntMatrix s;  // s*A*s^{-1} = [[0,1],[-d,t]]
};

// Searches primitive v with |v|_inf <= cap for |det[v | Av]| = 1. Sound always;
// complete only within the cap.
std::optional<CompanionReduction> companion_reduce(const IntMatrix& a, long cap = 50);

// Text parsers for the "a,b;c,d" CLI format.
IntMatrix parse_matrix_text(const std::string& text);

}  // namespace strex
