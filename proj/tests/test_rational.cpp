#include "doctest.h"
#include "yangian/ratfunc.hpp"

using namespace yangian;

TEST_CASE("rational: parse and print") {
    CHECK(Rational::parse("3/6") == Rational(1, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational::parse(" 4/2 ").str() == "2");
    CHECK(Rational(-1, 3).str() == "-1/3");
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse("1.5"));
    CHECK_THROWS(Rational::parse("2/-3"));
}

TEST_CASE("rational: floor, frac, binomial") {
    CHECK(Rational(-1, 3).floor() == -1);
    CHECK(Rational(-1, 3).frac() == Rational(2, 3));
    CHECK(Rational(7, 2).ceil() == 4);
    CHECK(binomial(Rational(5), 2) == Rational(10));
    CHECK(binomial(Rational(-1), 3) == Rational(-1));
    CHECK(binomial(Rational(1, 2), 2) == Rational(-1, 8));
    CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
}

TEST_CASE("ratfunc: normalization") {
    Poly kp2 = Poly::k() + Poly(2);
    RatFunc f(kp2.scaled(Rational(3)), kp2 * kp2);
    CHECK(f == RatFunc(Poly(3), kp2));
    CHECK((f * RatFunc(kp2)).is_constant());
    CHECK((f * RatFunc(kp2)).constant() == Rational(3));
    CHECK((f - f).is_zero());
    CHECK(f.eval(Rational(1)) == Rational(1));
    CHECK_THROWS(f.eval(Rational(-2)));
}

TEST_CASE("ratfunc: field operations") {
    RatFunc k = RatFunc::k();
    RatFunc a = RatFunc(1) / (k + RatFunc(3));
    RatFunc b = RatFunc(2) / (k - RatFunc(1));
    RatFunc s = a + b;
    CHECK(s * (k + RatFunc(3)) * (k - RatFunc(1)) == RatFunc(3) * k + RatFunc(5));
    CHECK((s - b) == a);
    CHECK(s / s == RatFunc(1));
}
