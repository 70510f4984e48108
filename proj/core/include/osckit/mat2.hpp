#pragma once

#include <array>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace osckit {

using Int = mpz_class;
using Rat = mpq_class;

/// Immutable 2x2 matrix over arbitrary-precision integers,
/// stored row-major as (a b; c d).
struct Mat2 {
    Int a, b, c, d;

    Mat2() : a(0), b(0), c(0), d(0) {}
    Mat2(Int a_, Int b_, Int c_, Int d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
    Mat2(long a_, long b_, long c_, long d_) : a(a_), b(b_), c(c_), d(d_) {}

    Int trace() const { return a + d; }
    Int det() const { return a * d - b * c; }
    bool is_unimodular() const {
        Int dt = det();
        return dt == 1 || dt == -1;
    }
    Mat2 transpose() const { return Mat2(a, c, b, d); }

    /// Inverse of a matrix with det = +-1. Throws otherwise.
    Mat2 inverse_unimodular() const;

    static Mat2 identity() { return Mat2(1, 0, 0, 1); }

    bool operator==(const Mat2& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
    bool operator!=(const Mat2& o) const { return !(*this == o); }
};

Mat2 operator*(const Mat2& l, const Mat2& r);
Mat2 operator-(const Mat2& m);
Mat2 operator-(const Mat2& l, const Mat2& r);
Mat2 operator+(const Mat2& l, const Mat2& r);

/// Entrywise lexicographic order by (a, b, c, d); used wherever a
/// deterministic representative has to be picked.
bool lex_less(const Mat2& l, const Mat2& r);

struct Mat2Less {
    bool operator()(const Mat2& l, const Mat2& r) const { return lex_less(l, r); }
};

// SL(2,Z) generators and the auxiliary matrices used throughout.
const Mat2& hat_A();  // (1 1; 0 1)
const Mat2& hat_B();  // (1 0; 1 1)
const Mat2& hat_U();  // (0 1; 1 0)
const Mat2& hat_W();  // (0 -1; 1 0)
const Mat2& hat_R();  // (0 1; -1 0)

/// M * B * M^-1 for unimodular M. Rejects non-unimodular M.
Mat2 conjugate(const Mat2& M, const Mat2& B);

/// Exact n-th power; M^0 = I, negative n inverts first (requires det = +-1).
Mat2 unimodular_pow(const Mat2& M, const Int& n);

/// Coordinates [K, D, S] = [a-d, b+c, -b+c] on the integer hyperboloid
/// K^2 + D^2 - S^2 = T^2 - 4. Requires det = 1 and trace > 2.
std::array<Int, 3> hyperboloid_coords(const Mat2& B);

/// Text format "a,b;c,d" (optional spaces).
Mat2 parse_mat2(std::string_view s);
std::string to_string(const Mat2& m);

}  // namespace osckit
