#include "doctest.h"

#include <stdexcept>

#include "normlab/rational.hpp"

using namespace normlab;

TEST_SUITE("rational") {

TEST_CASE("construction reduces to lowest terms") {
  Rational r(2, 4);
  CHECK(r.num() == 1);
  CHECK(r.den() == 2);
  CHECK(Rational(0, 5) == Rational(0, 1));
  CHECK(Rational(6, 3) == Rational(2, 1));
  CHECK(Rational() == Rational(0, 1));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("parse accepts p and p/q") {
  CHECK(Rational::parse("1/10") == Rational(1, 10));
  CHECK(Rational::parse("3") == Rational(3, 1));
  CHECK(Rational::parse("0/5") == Rational(0, 1));
  CHECK(Rational::parse("7/21") == Rational(1, 3));
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("/2"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("a"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("0.1"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("-1/2"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), std::invalid_argument);
}

TEST_CASE("ordering is exact under cross-multiplication") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(2, 3) > Rational(1, 2));
  CHECK(Rational(1, 2) <= Rational(2, 4));
  CHECK(Rational(1, 2) >= Rational(2, 4));
  // These differ by 1/(2^32 * (2^32 - 1)); doubles cannot tell them apart.
  const u64 two32 = u64{1} << 32;
  Rational a(two32 + 1, two32);
  Rational b(two32, two32 - 1);
  CHECK(a < b);
  CHECK(!(b < a));
  CHECK(a.to_double() == b.to_double());  // the motivating failure of doubles
}

TEST_CASE("scaled multiplies by an integer factor") {
  CHECK(Rational(1, 10).scaled(2) == Rational(1, 5));
  CHECK(Rational(3, 4).scaled(2) == Rational(3, 2));
  CHECK(Rational(1, 6).scaled(4) == Rational(2, 3));
  CHECK(Rational(0, 3).scaled(100) == Rational(0, 1));
  // Factor sharing no divisor with den overflows the numerator.
  const u64 big = 0xffffffffffffffffull;
  CHECK_THROWS_AS(Rational(big, 7).scaled(3), std::overflow_error);
  // ...but a factor that cancels against den stays representable.
  CHECK(Rational(big, 6).scaled(6) == Rational(big, 1));
}

TEST_CASE("str formatting") {
  CHECK(Rational(1, 10).str() == "1/10");
  CHECK(Rational(4, 2).str() == "2");
  CHECK(Rational(0, 9).str() == "0");
}

} // TEST_SUITE
