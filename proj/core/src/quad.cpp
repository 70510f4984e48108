#include "osckit/quad.hpp"

#include <sstream>
#include <vector>

namespace osckit {

namespace {

void require_valid_field(const Int& d) {
    if (d < 2) throw std::invalid_argument("QuadElem: d must be >= 2");
    if (!is_squarefree(d)) throw std::invalid_argument("QuadElem: d must be square-free");
}

}  // namespace

bool is_squarefree(const Int& n) {
    if (n < 1) return false;
    Int m = n;
    for (Int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            m /= p;
            if (m % p == 0) return false;
        }
    }
    return true;
}

QuadElem::QuadElem(Rat x, Rat y, Int d) : x_(std::move(x)), y_(std::move(y)), d_(std::move(d)) {
    require_valid_field(d_);
    x_.canonicalize();
    y_.canonicalize();
}

bool QuadElem::is_integral() const {
    return x_.get_den() == 1 && y_.get_den() == 1;
}

Rat QuadElem::norm() const { return x_ * x_ - Rat(d_) * y_ * y_; }

QuadElem QuadElem::inverse() const {
    Rat n = norm();
    if (n == 0) throw std::domain_error("QuadElem::inverse: zero element");
    return QuadElem(x_ / n, -y_ / n, d_);
}

QuadElem QuadElem::pow(const Int& n) const {
    QuadElem base = *this;
    Int e = n;
    if (e < 0) {
        base = inverse();
        e = -e;
    }
    QuadElem result = QuadElem::one(d_);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

int QuadElem::sign() const {
    int sx = sgn(x_);
    int sy = sgn(y_);
    if (sy == 0) return sx;
    if (sx == 0) return sy;
    if (sx == sy) return sx;
    // x and y of opposite sign: x + y*sqrt(d) has the sign of x^2 - d*y^2
    // times the sign of x - y*sqrt(d), and the latter has the sign of x.
    int sn = sgn(norm());
    return sn == 0 ? 0 : sx * sn;
}

void QuadElem::require_same_field(const QuadElem& o) const {
    if (d_ != o.d_)
        throw std::invalid_argument("QuadElem: mixing elements of Q(sqrt(" + d_.get_str() +
                                    ")) and Q(sqrt(" + o.d_.get_str() + "))");
}

QuadElem QuadElem::operator+(const QuadElem& o) const {
    require_same_field(o);
    return QuadElem(x_ + o.x_, y_ + o.y_, d_);
}

QuadElem QuadElem::operator-(const QuadElem& o) const {
    require_same_field(o);
    return QuadElem(x_ - o.x_, y_ - o.y_, d_);
}

QuadElem QuadElem::operator*(const QuadElem& o) const {
    require_same_field(o);
    return QuadElem(x_ * o.x_ + Rat(d_) * y_ * o.y_, x_ * o.y_ + y_ * o.x_, d_);
}

QuadElem QuadElem::operator/(const QuadElem& o) const { return *this * o.inverse(); }

QuadElem QuadElem::operator/(const Rat& s) const {
    if (s == 0) throw std::domain_error("QuadElem: division by zero scalar");
    return QuadElem(x_ / s, y_ / s, d_);
}

bool QuadElem::operator==(const QuadElem& o) const {
    require_same_field(o);
    return x_ == o.x_ && y_ == o.y_;
}

bool QuadElem::operator<(const QuadElem& o) const { return (*this - o).sign() < 0; }

std::string to_string(const QuadElem& q) {
    std::ostringstream os;
    os << q.x() << " + " << q.y() << "*sqrt(" << q.d() << ")";
    return os.str();
}

std::pair<Int, Int> squarefree_decompose(const Int& n) {
    if (n < 1) throw std::invalid_argument("squarefree_decompose: n must be >= 1");
    Int m = n;
    Int f = 1;
    Int d = 1;
    for (Int p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        int mult = 0;
        while (m % p == 0) {
            m /= p;
            ++mult;
        }
        for (int i = 0; i < mult / 2; ++i) f *= p;
        if (mult % 2 == 1) d *= p;
    }
    d *= m;  // remaining prime factor, multiplicity one
    return {f, d};
}

QuadElem fundamental_unit(const Int& d) {
    require_valid_field(d);

    // Continued fraction of sqrt(d); the convergent just before the end of
    // the first period gives the fundamental solution of x^2 - d y^2 = +-1,
    // hence the fundamental unit of the order Z[sqrt(d)].
    Int a0;
    mpz_sqrt(a0.get_mpz_t(), d.get_mpz_t());
    Int m = 0, q = 1, a = a0;
    Int p_prev = 1, p_cur = a0;  // convergent numerators p_{k-1}, p_k
    Int q_prev = 0, q_cur = 1;   // convergent denominators
    while (true) {
        m = a * q - m;
        q = (d - m * m) / q;
        if (q == 1) break;  // period complete at the next step
        a = (a0 + m) / q;
        Int p_next = a * p_cur + p_prev;
        Int q_next = a * q_cur + q_prev;
        p_prev = p_cur;
        p_cur = p_next;
        q_prev = q_cur;
        q_cur = q_next;
    }
    QuadElem eps0(Rat(p_cur), Rat(q_cur), d);

    if (mpz_fdiv_ui(d.get_mpz_t(), 4) == 1) {
        // The maximal order may contain a smaller unit (u + v*sqrt(d))/2 with
        // u, v odd and u^2 - d v^2 = +-4; if it exists, its cube is eps0.
        // Any such unit has v <= eps0^(1/3) <= (8 (y+1) (a0+2))^(1/3).
        Int bound_base = 8 * (q_cur + 1) * (a0 + 2);
        Int vmax;
        mpz_root(vmax.get_mpz_t(), bound_base.get_mpz_t(), 3);
        vmax += 2;
        for (Int v = 1; v <= vmax; v += 2) {
            for (int delta : {-4, 4}) {
                Int usq = d * v * v + delta;
                if (usq <= 0) continue;
                Int u;
                mpz_sqrt(u.get_mpz_t(), usq.get_mpz_t());
                if (u * u != usq) continue;
                if (mpz_even_p(u.get_mpz_t())) continue;
                QuadElem eta(Rat(u) / 2, Rat(v) / 2, d);
                if (eta.pow(3) == eps0) return eta;
            }
        }
    }
    return eps0;
}

SpectralData spectral_of_trace(const Int& T) {
    if (T < 3) throw std::invalid_argument("spectral_of_trace: T must be >= 3");
    auto [f, d] = squarefree_decompose(T * T - 4);
    QuadElem lambda(Rat(T) / 2, Rat(f) / 2, d);
    QuadElem eps = fundamental_unit(d);
    QuadElem power = eps;
    Int m = 1;
    while (power != lambda) {
        power = power * eps;
        ++m;
        if (m > 1000)
            throw std::logic_error("spectral_of_trace: eigenvalue is not a power of the unit");
    }
    return SpectralData{T, f, d, lambda, eps, m};
}

}  // namespace osckit
