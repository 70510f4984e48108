#include <doctest.h>

#include <random>

#include "osckit/quad.hpp"

using namespace osckit;

namespace {

QuadElem q(long x_num, long x_den, long y_num, long y_den, long d) {
    return QuadElem(Rat(x_num, x_den), Rat(y_num, y_den), d);
}

}  // namespace

TEST_CASE("squarefree decomposition") {
    CHECK(squarefree_decompose(32) == std::pair<Int, Int>{4, 2});
    CHECK(squarefree_decompose(45) == std::pair<Int, Int>{3, 5});
    CHECK(squarefree_decompose(21) == std::pair<Int, Int>{1, 21});
    CHECK(squarefree_decompose(1) == std::pair<Int, Int>{1, 1});
    CHECK_THROWS_AS(squarefree_decompose(0), std::invalid_argument);

    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long> dist(1, 100000);
    for (int i = 0; i < 200; ++i) {
        Int n = dist(rng);
        auto [f, d] = squarefree_decompose(n);
        CHECK(f * f * d == n);
        CHECK(is_squarefree(d));
    }
}

TEST_CASE("fundamental units") {
    CHECK(fundamental_unit(5) == q(1, 2, 1, 2, 5));
    CHECK(fundamental_unit(3) == q(2, 1, 1, 1, 3));
    CHECK(fundamental_unit(2) == q(1, 1, 1, 1, 2));
    CHECK(fundamental_unit(21) == q(5, 2, 1, 2, 21));
    CHECK(fundamental_unit(11) == q(10, 1, 3, 1, 11));

    for (long d : {2L, 3L, 5L, 6L, 7L, 10L, 13L, 21L, 29L, 53L, 61L, 94L}) {
        QuadElem eps = fundamental_unit(d);
        Rat n = eps.norm();
        CHECK((n == 1 || n == -1));
        CHECK(eps > QuadElem::one(d));
    }
}

TEST_CASE("spectral data of a trace") {
    SpectralData s4 = spectral_of_trace(4);
    CHECK(s4.lambda == q(2, 1, 1, 1, 3));
    CHECK(s4.eps == s4.lambda);
    CHECK(s4.m == 1);

    SpectralData s6 = spectral_of_trace(6);
    CHECK(s6.lambda == q(3, 1, 2, 1, 2));
    CHECK(s6.eps == q(1, 1, 1, 1, 2));
    CHECK(s6.m == 2);

    SpectralData s3 = spectral_of_trace(3);
    CHECK(s3.lambda == q(3, 2, 1, 2, 5));
    CHECK(s3.eps == q(1, 2, 1, 2, 5));
    CHECK(s3.m == 2);

    SpectralData s5 = spectral_of_trace(5);
    CHECK(s5.lambda == q(5, 2, 1, 2, 21));
    CHECK(s5.m == 1);

    // T = 7: eps^3 = 2 + sqrt(5) is not the eigenvalue; eps^4 is.
    SpectralData s7 = spectral_of_trace(7);
    CHECK(s7.lambda == q(7, 2, 3, 2, 5));
    CHECK(s7.eps == q(1, 2, 1, 2, 5));
    CHECK(s7.eps.pow(3) == q(2, 1, 1, 1, 5));
    CHECK(s7.m == 4);
}

TEST_CASE("lambda satisfies its characteristic equation exactly") {
    for (long T = 3; T <= 200; ++T) {
        SpectralData sd = spectral_of_trace(T);
        CHECK(sd.lambda * sd.lambda - sd.lambda * Rat(T) + QuadElem::one(sd.d) ==
              QuadElem::zero(sd.d));
        CHECK(sd.eps.pow(sd.m) == sd.lambda);
        CHECK(sd.lambda * sd.lambda.conj() == QuadElem::one(sd.d));
        CHECK(sd.lambda + sd.lambda.conj() == QuadElem(Rat(T), Rat(0), sd.d));
    }
}

TEST_CASE("field axioms on random elements") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<long> num(-8, 8);
    std::uniform_int_distribution<long> den(1, 5);
    auto sample = [&](long d) { return q(num(rng), den(rng), num(rng), den(rng), d); };
    for (long d : {2L, 5L, 21L}) {
        for (int i = 0; i < 60; ++i) {
            QuadElem a = sample(d), b = sample(d), c = sample(d);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a.norm() * b.norm() == (a * b).norm());
            CHECK((a * b).conj() == a.conj() * b.conj());
            CHECK((a + b).conj() == a.conj() + b.conj());
            if (a.sign() != 0) CHECK(a * a.inverse() == QuadElem::one(d));
        }
    }
}

TEST_CASE("exact comparison agrees with high-precision evaluation") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 7);
    for (long d : {2L, 3L, 5L, 21L}) {
        mpf_class root(0, 256);
        mpf_sqrt_ui(root.get_mpf_t(), static_cast<unsigned long>(d));
        for (int i = 0; i < 100; ++i) {
            QuadElem a = q(num(rng), den(rng), num(rng), den(rng), d);
            mpf_class approx = mpf_class(a.x(), 256) + mpf_class(a.y(), 256) * root;
            int float_sign = (approx > 1e-30) ? 1 : (approx < -1e-30 ? -1 : 0);
            if (float_sign != 0) CHECK(a.sign() == float_sign);
        }
    }
}

TEST_CASE("sign corner cases") {
    CHECK(q(3, 1, -2, 1, 2).sign() == 1);    // 3 > 2 sqrt(2)
    CHECK(q(2, 1, -2, 1, 2).sign() == -1);   // 2 < 2 sqrt(2)
    CHECK(q(-3, 1, 2, 1, 2).sign() == -1);
    CHECK(q(-2, 1, 2, 1, 2).sign() == 1);
    CHECK(q(0, 1, 0, 1, 7).sign() == 0);
    CHECK(q(1, 2, 1, 2, 5) > QuadElem::one(5));  // golden ratio exceeds 1
    CHECK(q(1, 2, 1, 2, 5) < QuadElem(Rat(2), Rat(0), 5));
}

TEST_CASE("mixing fields is rejected") {
    QuadElem a = QuadElem::one(2);
    QuadElem b = QuadElem::one(3);
    CHECK_THROWS_AS((void)(a + b), std::invalid_argument);
    CHECK_THROWS_AS((void)(a * b), std::invalid_argument);
    CHECK_THROWS_AS((void)(a == b), std::invalid_argument);
    CHECK_THROWS_AS(QuadElem(Rat(1), Rat(1), 4), std::invalid_argument);
    CHECK_THROWS_AS(QuadElem(Rat(1), Rat(1), 1), std::invalid_argument);
}
