#pragma once

#include <string>
#include <utility>

#include "osckit/mat2.hpp"

namespace osckit {

/// Exact element x + y*sqrt(d) of the real quadratic field Q(sqrt(d)),
/// with rational x, y and square-free d >= 2. Arithmetic between elements
/// of different fields is rejected, never coerced.
class QuadElem {
public:
    QuadElem(Rat x, Rat y, Int d);

    const Rat& x() const { return x_; }
    const Rat& y() const { return y_; }
    const Int& d() const { return d_; }

    bool is_rational() const { return y_ == 0; }
    bool is_integral() const;

    /// Galois conjugate x - y*sqrt(d).
    QuadElem conj() const { return QuadElem(x_, -y_, d_); }
    /// Field norm x^2 - d*y^2 (a rational).
    Rat norm() const;
    QuadElem inverse() const;
    QuadElem pow(const Int& n) const;

    /// Exact sign (-1, 0, +1), decided by sign tests on x, y and the norm,
    /// never by floating point.
    int sign() const;

    QuadElem operator-() const { return QuadElem(-x_, -y_, d_); }
    QuadElem operator+(const QuadElem& o) const;
    QuadElem operator-(const QuadElem& o) const;
    QuadElem operator*(const QuadElem& o) const;
    QuadElem operator/(const QuadElem& o) const;
    QuadElem operator*(const Rat& s) const { return QuadElem(x_ * s, y_ * s, d_); }
    QuadElem operator/(const Rat& s) const;
    QuadElem operator+(const Rat& s) const { return QuadElem(x_ + s, y_, d_); }
    QuadElem operator-(const Rat& s) const { return QuadElem(x_ - s, y_, d_); }

    bool operator==(const QuadElem& o) const;
    bool operator!=(const QuadElem& o) const { return !(*this == o); }
    bool operator<(const QuadElem& o) const;
    bool operator>(const QuadElem& o) const { return o < *this; }
    bool operator<=(const QuadElem& o) const { return !(o < *this); }
    bool operator>=(const QuadElem& o) const { return !(*this < o); }

    static QuadElem zero(const Int& d) { return QuadElem(Rat(0), Rat(0), d); }
    static QuadElem one(const Int& d) { return QuadElem(Rat(1), Rat(0), d); }
    /// sqrt(d) itself.
    static QuadElem root(const Int& d) { return QuadElem(Rat(0), Rat(1), d); }

private:
    Rat x_, y_;
    Int d_;

    void require_same_field(const QuadElem& o) const;
};

std::string to_string(const QuadElem& q);

/// n = f^2 * d with d square-free; returns (f, d). Rejects n < 1.
std::pair<Int, Int> squarefree_decompose(const Int& n);

bool is_squarefree(const Int& n);

/// Smallest unit > 1 of the ring of integers of Q(sqrt(d)). For
/// d = 1 mod 4 the result may have half-integer coordinates
/// (u + v*sqrt(d))/2 with u^2 - d v^2 = +-4.
QuadElem fundamental_unit(const Int& d);

/// Spectral package of a trace T > 2: the dominant eigenvalue
/// lambda = (T + f*sqrt(d))/2 of any B in B_T, the fundamental unit eps
/// of Q(sqrt(d)) and the exact exponent m with eps^m = lambda.
struct SpectralData {
    Int T;
    Int f;
    Int d;
    QuadElem lambda;
    QuadElem eps;
    Int m;
};

SpectralData spectral_of_trace(const Int& T);

}  // namespace osckit
