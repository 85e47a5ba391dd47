#include "doctest.h"
#include "yangian/cartan.hpp"

using namespace yangian;

TEST_CASE("cartan: rank one") {
    AlgebraData d = build_algebra_data(2);
    CHECK(d.a(0, 0) == 2);
    CHECK(d.B(0, 0) == Rational(1));
    CHECK(d.Binv(0, 0) == Rational(1));
    CHECK(d.g == 2);
}

TEST_CASE("cartan: N=3 inverse") {
    AlgebraData d = build_algebra_data(3);
    CHECK(d.Binv(0, 0) == Rational(4, 3));
    CHECK(d.Binv(0, 1) == Rational(2, 3));
    CHECK(d.Binv(1, 0) == Rational(2, 3));
    CHECK(d.Binv(1, 1) == Rational(4, 3));
    CHECK(d.B(0, 1) == Rational(-1, 2));
}

TEST_CASE("cartan: B*Binv is the identity") {
    for (int N = 2; N <= 6; ++N) {
        AlgebraData d = build_algebra_data(N);
        RationalMatrix id = d.B * d.Binv;
        CHECK(id == RationalMatrix::Identity(N - 1, N - 1));
        CHECK(d.a == d.a.transpose());
    }
}

TEST_CASE("cartan: closed form agrees with Gauss-Jordan") {
    for (int N = 2; N <= 6; ++N) {
        AlgebraData d = build_algebra_data(N);
        CHECK(exact_inverse<Rational>(d.B) == d.Binv);
    }
}

TEST_CASE("cartan: invalid rank") {
    CHECK_THROWS_AS(build_algebra_data(1), InvalidRank);
    CHECK_THROWS_AS(build_algebra_data(-3), InvalidRank);
}
