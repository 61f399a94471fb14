#include "ctclock/errors.hpp"
#include "ctclock/rational.hpp"

#include "doctest.h"

#include <random>
#include <sstream>

using namespace ctclock;

TEST_CASE("construction reduces and normalizes sign") {
    Rational r(BigInt(6), BigInt(-8));
    CHECK(r.num() == -3);
    CHECK(r.den() == 4);
    CHECK(Rational(BigInt(0), BigInt(7)) == Rational(0));
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), InvalidInput);
}

TEST_CASE("parse accepts p/q and bare integers") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-3/4") == Rational(-3, 4));
    CHECK(Rational::parse(" 7 ") == Rational(7));
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK_THROWS_AS(Rational::parse("1/0"), InvalidInput);
    CHECK_THROWS_AS(Rational::parse("a/b"), InvalidInput);
    CHECK_THROWS_AS(Rational::parse(""), InvalidInput);
    CHECK_THROWS_AS(Rational::parse("1.5"), InvalidInput);
}

TEST_CASE("arithmetic stays exact") {
    Rational a(1, 2), b(3, 4);
    CHECK(a + b == Rational(5, 4));
    CHECK(a - b == Rational(-1, 4));
    CHECK(a * b == Rational(3, 8));
    CHECK(a / b == Rational(2, 3));
    CHECK(-a == Rational(-1, 2));
    CHECK(abs(Rational(-5, 3)) == Rational(5, 3));
    CHECK_THROWS_AS(a / Rational(0), InvalidInput);
}

TEST_CASE("comparisons use cross multiplication") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(7, 5) > Rational(4, 3));
    CHECK(Rational(3, 7) <= Rational(3, 7));
}

TEST_CASE("to_double rounds correctly") {
    CHECK(Rational(1, 2).to_double() == 0.5);
    CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
    // 2^60 + 1 over 2^60: not representable, must round to nearest
    BigInt big = (BigInt(1) << 60) + 1;
    CHECK(Rational(big, BigInt(1) << 60).to_double() == 1.0);
    CHECK(Rational(-5, 2).to_double() == -2.5);
}

TEST_CASE("str round-trips through parse") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        long long p = static_cast<long long>(rng() % 2000) - 1000;
        long long q = 1 + static_cast<long long>(rng() % 999);
        Rational r(p, q);
        CHECK(Rational::parse(r.str()) == r);
    }
}

TEST_CASE("exactness survives long alternating sums") {
    // sum_{k=1..100} (-1)^{k+1} / k, computed forward and backward
    Rational fwd(0), bwd(0);
    for (int k = 1; k <= 100; ++k) fwd += Rational((k % 2) ? 1 : -1, k);
    for (int k = 100; k >= 1; --k) bwd += Rational((k % 2) ? 1 : -1, k);
    CHECK(fwd == bwd);
    CHECK(fwd.den() > 1);
}
