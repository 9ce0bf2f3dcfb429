#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace strex {

// Exact arbitrary-precision scalars. mpq_class values are kept canonical
// (lowest terms, positive denominator) by GMP itself.
using Int = mpz_class;
using Rat = mpq_class;

using RatVec = std::vector<Rat>;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline int sign(const Rat& q) { return sgn(q); }
inline int sign(const Int& z) { return sgn(z); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }
inline Int int_abs(const Int& z) { return z < 0 ? Int(-z) : z; }

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }

// Largest integer <= q.
inline Int rat_floor(const Rat& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return f;
}

// Smallest integer >= q.
inline Int rat_ceil(const Rat& q) {
    Int c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return c;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Serialized form "p/q" in lowest terms, denominator always present.
std::string rat_to_string(const Rat& q);

// Accepts "p", "p/q", or "-p/q"; throws ParseError on malformed input.
Rat rat_from_string(const std::string& s);

}  // namespace strex
