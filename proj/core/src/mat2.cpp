#include "osckit/mat2.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace osckit {

Mat2 Mat2::inverse_unimodular() const {
    Int dt = det();
    if (dt == 1) return Mat2(d, -b, -c, a);
    if (dt == -1) return Mat2(-d, b, c, -a);
    throw std::invalid_argument("Mat2::inverse_unimodular: determinant is not +-1");
}

Mat2 operator*(const Mat2& l, const Mat2& r) {
    return Mat2(l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
                l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d);
}

Mat2 operator-(const Mat2& m) { return Mat2(-m.a, -m.b, -m.c, -m.d); }

Mat2 operator-(const Mat2& l, const Mat2& r) {
    return Mat2(l.a - r.a, l.b - r.b, l.c - r.c, l.d - r.d);
}

Mat2 operator+(const Mat2& l, const Mat2& r) {
    return Mat2(l.a + r.a, l.b + r.b, l.c + r.c, l.d + r.d);
}

bool lex_less(const Mat2& l, const Mat2& r) {
    if (l.a != r.a) return l.a < r.a;
    if (l.b != r.b) return l.b < r.b;
    if (l.c != r.c) return l.c < r.c;
    return l.d < r.d;
}

const Mat2& hat_A() {
    static const Mat2 m(1, 1, 0, 1);
    return m;
}
const Mat2& hat_B() {
    static const Mat2 m(1, 0, 1, 1);
    return m;
}
const Mat2& hat_U() {
    static const Mat2 m(0, 1, 1, 0);
    return m;
}
const Mat2& hat_W() {
    static const Mat2 m(0, -1, 1, 0);
    return m;
}
const Mat2& hat_R() {
    static const Mat2 m(0, 1, -1, 0);
    return m;
}

Mat2 conjugate(const Mat2& M, const Mat2& B) {
    if (!M.is_unimodular())
        throw std::invalid_argument("conjugate: conjugator is not unimodular");
    return M * B * M.inverse_unimodular();
}

Mat2 unimodular_pow(const Mat2& M, const Int& n) {
    Mat2 base = M;
    Int e = n;
    if (e < 0) {
        base = M.inverse_unimodular();  // throws for non-unimodular M
        e = -e;
    }
    Mat2 result = Mat2::identity();
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

std::array<Int, 3> hyperboloid_coords(const Mat2& B) {
    if (B.det() != 1 || B.trace() <= 2)
        throw std::invalid_argument("hyperboloid_coords: matrix is not in B_T (det 1, trace > 2)");
    return {B.a - B.d, B.b + B.c, -B.b + B.c};
}

namespace {

Int parse_int_token(std::string_view s, size_t& pos) {
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
        throw std::invalid_argument("parse_mat2: expected integer in \"" + std::string(s) + "\"");
    return Int(std::string(s.substr(start, pos - start)));
}

void skip_spaces(std::string_view s, size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

void expect(std::string_view s, size_t& pos, char c) {
    skip_spaces(s, pos);
    if (pos >= s.size() || s[pos] != c)
        throw std::invalid_argument(std::string("parse_mat2: expected '") + c + "' in \"" +
                                    std::string(s) + "\"");
    ++pos;
}

}  // namespace

Mat2 parse_mat2(std::string_view s) {
    size_t pos = 0;
    skip_spaces(s, pos);
    Int a = parse_int_token(s, pos);
    expect(s, pos, ',');
    skip_spaces(s, pos);
    Int b = parse_int_token(s, pos);
    expect(s, pos, ';');
    skip_spaces(s, pos);
    Int c = parse_int_token(s, pos);
    expect(s, pos, ',');
    skip_spaces(s, pos);
    Int d = parse_int_token(s, pos);
    skip_spaces(s, pos);
    if (pos != s.size())
        throw std::invalid_argument("parse_mat2: trailing characters in \"" + std::string(s) + "\"");
    return Mat2(a, b, c, d);
}

std::string to_string(const Mat2& m) {
    std::ostringstream os;
    os << m.a << ',' << m.b << ';' << m.c << ',' << m.d;
    return os.str();
}

}  // namespace osckit
