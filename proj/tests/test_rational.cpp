#include <doctest.h>

#include <functional>
#include <random>
#include <stdexcept>

#include "crshadow/rational.hpp"

using crshadow::Rational;
using crshadow::parse_rational;
using crshadow::pow2_inverse;

TEST_CASE("construction normalizes to lowest terms with positive denominator") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0, -7).den == 1);
  CHECK(Rational(6, 3).num == 2);
  CHECK(Rational(6, 3).den == 1);
}

TEST_CASE("zero denominator throws") {
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(5) / Rational(0), std::domain_error);
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(-Rational(3, 5) == Rational(-3, 5));
  // a classic float trap stays exact here
  Rational sum = Rational(1, 10) + Rational(2, 10);
  CHECK(sum == Rational(3, 10));
}

TEST_CASE("compound assignment matches binary operators") {
  Rational r(1, 2);
  r += Rational(1, 3);
  CHECK(r == Rational(5, 6));
  r -= Rational(1, 6);
  CHECK(r == Rational(2, 3));
  r *= Rational(3, 2);
  CHECK(r == Rational(1));
  r /= Rational(4);
  CHECK(r == Rational(1, 4));
}

TEST_CASE("intermediates wider than 64 bits survive when the result fits") {
  // (2^62 / 3) * (3 / 2^61) = 2; the cross products exceed int64.
  Rational big(int64_t(1) << 62, 3);
  Rational tiny(3, int64_t(1) << 61);
  CHECK(big * tiny == Rational(2));
}

TEST_CASE("results that do not fit in 64 bits throw instead of wrapping") {
  Rational big(int64_t(1) << 62, 1);
  CHECK_THROWS_AS(big * big, std::overflow_error);
  CHECK_THROWS_AS(big + big * Rational(3), std::overflow_error);
  // denominators blow up the same way
  Rational smallden(1, int64_t(1) << 62);
  CHECK_THROWS_AS(smallden * smallden, std::overflow_error);
}

TEST_CASE("ordering is the rational order, not the struct order") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(2, 6) <= Rational(1, 3));
  CHECK(Rational(1, 3) >= Rational(2, 6));
  CHECK(Rational(7, 8) > Rational(6, 7));
  CHECK_FALSE(Rational(1, 2) < Rational(1, 2));
}

TEST_CASE("abs min max") {
  CHECK(crshadow::abs(Rational(-3, 4)) == Rational(3, 4));
  CHECK(crshadow::abs(Rational(3, 4)) == Rational(3, 4));
  CHECK(crshadow::min(Rational(1, 3), Rational(1, 2)) == Rational(1, 3));
  CHECK(crshadow::max(Rational(1, 3), Rational(1, 2)) == Rational(1, 2));
}

TEST_CASE("parse accepts fractions integers and decimals") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("6/8") == Rational(3, 4));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational("0") == Rational(0));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5") == Rational(-3, 2));
}

TEST_CASE("parse rejects garbage") {
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("2."), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::domain_error);
}

TEST_CASE("str and parse round-trip") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 200; ++t) {
    int64_t n = (int64_t)(rng() % 2001) - 1000;
    int64_t d = (int64_t)(rng() % 1000) + 1;
    Rational r(n, d);
    CHECK(parse_rational(r.str()) == r);
  }
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(-2).str() == "-2");
  CHECK(Rational(0).str() == "0");
}

TEST_CASE("pow2_inverse gives exact dyadics and rejects huge exponents") {
  CHECK(pow2_inverse(0) == Rational(1));
  CHECK(pow2_inverse(1) == Rational(1, 2));
  CHECK(pow2_inverse(5) == Rational(1, 32));
  CHECK(pow2_inverse(62) == Rational(1, int64_t(1) << 62));
  CHECK_THROWS_AS(pow2_inverse(63), std::overflow_error);
  CHECK_THROWS_AS(pow2_inverse(-1), std::overflow_error);
}

TEST_CASE("equal rationals hash equal") {
  std::hash<Rational> h;
  CHECK(h(Rational(2, 4)) == h(Rational(1, 2)));
  CHECK(h(Rational(1, 2)) != h(Rational(1, 3)));  // not required, but sane
}
