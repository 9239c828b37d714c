#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kbsym/rational.hpp"

using namespace kbsym;

TEST_CASE("bigint arithmetic and radix conversion") {
    BigInt a("123456789012345678901234567890");
    BigInt b("987654321098765432109876543210");
    CHECK((a + b).str() == "1111111110111111111011111111100");
    CHECK((b - a).str() == "864197532086419753208641975320");
    CHECK((a * BigInt(0)).is_zero());
    CHECK((BigInt(-7) % BigInt(3)).str() == "-1");
    CHECK((BigInt(-7) / BigInt(3)).str() == "-2");
    CHECK(BigInt::gcd(BigInt(462), BigInt(1071)).str() == "21");
    CHECK(BigInt(-5).to_ll() == -5);
    CHECK_FALSE(a.fits_ll());
}

TEST_CASE("bigint multiplication round trip") {
    BigInt a("340282366920938463463374607431768211456");  // 2^128
    CHECK((a / BigInt(2)).str() == "170141183460469231731687303715884105728");
    CHECK((a % BigInt(7)).str() == "4");
}

TEST_CASE("rational normal form") {
    Rational r(6, -4);
    CHECK(r.str() == "-3/2");
    CHECK((r * r).str() == "9/4");
    CHECK((Rational(1, 3) + Rational(1, 6)).str() == "1/2");
    CHECK(Rational(5, 10) == Rational(1, 2));
    CHECK(Rational(3, 7).inv().str() == "7/3");
    CHECK(Rational(-2, 3).pow_int(-2).str() == "9/4");
    CHECK(Rational(2).pow_int(20).str() == "1048576");
}

TEST_CASE("rational parsing") {
    CHECK(Rational::parse("4.7").str() == "47/10");
    CHECK(Rational::parse("-0.125").str() == "-1/8");
    CHECK(Rational::parse("22/7").str() == "22/7");
    CHECK(Rational::parse("-3").str() == "-3");
    CHECK(Rational::parse("5/36") < Rational(1, 4));
}

TEST_CASE("rational errors") {
    CHECK_THROWS(Rational(1, 0));
    CHECK_THROWS(Rational(1, 2) / Rational(0));
    CHECK_THROWS(Rational(0).pow_int(-1));
}
