#include "doctest.h"

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "normlab/digits.hpp"

using namespace normlab;

TEST_SUITE("digits") {

TEST_CASE("base validation") {
  CHECK_THROWS_AS(Base(0), std::invalid_argument);
  CHECK_THROWS_AS(Base(1), std::invalid_argument);
  CHECK_THROWS_AS(Base(257), std::invalid_argument);
  CHECK(Base(2).value() == 2);
  CHECK(Base(10).value() == 10);
  CHECK(Base(256).value() == 256);
}

TEST_CASE("to_digits basics") {
  CHECK(format_digits(to_digits(0, Base(10))) == "0");
  CHECK(format_digits(to_digits(32041, Base(10))) == "32041");
  CHECK(format_digits(to_digits(100, Base(2))) == "1100100");
  CHECK(format_digits(to_digits(255, Base(16))) == "ff");
  // Largest u64 value round-trips through every base.
  const u64 big = 18446744073709551615ull;
  for (unsigned g : {2u, 3u, 10u, 16u, 255u, 256u}) {
    DigitString d = to_digits(big, Base(g));
    CHECK(digit_value(d) == big);
  }
}

TEST_CASE("to_digits_padded pads with leading zeros") {
  DigitString d = to_digits_padded(41, Base(10), 3);
  CHECK(d.size() == 3);
  CHECK(format_digits(d) == "041");
  CHECK(format_digits(to_digits_padded(0, Base(10), 3)) == "000");
  CHECK(format_digits(to_digits_padded(7, Base(2), 5)) == "00111");
  // Value that does not fit in the requested width is rejected.
  CHECK_THROWS_AS(to_digits_padded(1000, Base(10), 3), std::invalid_argument);
  CHECK_THROWS_AS(to_digits_padded(1, Base(10), 0), std::invalid_argument);
}

TEST_CASE("digit_length boundaries") {
  CHECK(digit_length(1, Base(10)) == 1);
  CHECK(digit_length(9, Base(10)) == 1);
  CHECK(digit_length(10, Base(10)) == 2);
  CHECK(digit_length(999, Base(10)) == 3);
  CHECK(digit_length(1000, Base(10)) == 4);
  CHECK(digit_length(1, Base(2)) == 1);
  CHECK(digit_length(2, Base(2)) == 2);
  CHECK(digit_length(255, Base(2)) == 8);
  CHECK(digit_length(256, Base(2)) == 9);
  CHECK(digit_length(18446744073709551615ull, Base(2)) == 64);
  CHECK_THROWS_AS(digit_length(0, Base(10)), std::invalid_argument);
}

TEST_CASE("digit_length agrees with to_digits") {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 2000; ++i) {
    u64 n = (rng() >> (rng() % 60)) | 1;
    unsigned g = 2 + static_cast<unsigned>(rng() % 255);
    CHECK(digit_length(n, Base(g)) == to_digits(n, Base(g)).size());
  }
}

TEST_CASE("concat joins strings in order") {
  DigitString a = to_digits(32, Base(10));
  DigitString b = to_digits_padded(41, Base(10), 3);
  std::vector<DigitString> parts{a, b};
  CHECK(format_digits(concat(parts)) == "32041");

  std::vector<DigitString> empty_list;
  CHECK_THROWS_AS(concat(empty_list), std::invalid_argument);

  std::vector<DigitString> mismatched{to_digits(1, Base(2)), to_digits(1, Base(3))};
  CHECK_THROWS_AS(concat(mismatched), std::invalid_argument);

  // An empty digit string is a concatenation identity.
  std::vector<DigitString> with_empty{DigitString(Base(10)), a};
  CHECK(format_digits(concat(with_empty)) == "32");
}

TEST_CASE("digit_value inverts to_digits and detects overflow") {
  std::mt19937_64 rng(999);
  for (int i = 0; i < 2000; ++i) {
    u64 n = rng() >> (rng() % 64);
    unsigned g = 2 + static_cast<unsigned>(rng() % 255);
    CHECK(digit_value(to_digits(n, Base(g))) == n);
  }
  // 21 nines exceeds the 64-bit range in base 10.
  DigitString too_big(Base(10));
  for (int i = 0; i < 21; ++i) too_big.append(9);
  CHECK_THROWS_AS(digit_value(too_big), std::overflow_error);
  CHECK(digit_value(DigitString(Base(10))) == 0);
}

TEST_CASE("format and parse round-trip") {
  CHECK(format_digits(parse_digit_text("0041", Base(10)), Base(10)) == "0041");
  CHECK(format_digits(parse_digit_text("deadBEEF", Base(16)), Base(16)) == "deadbeef");
  CHECK(parse_digit_text("", Base(10)).empty());
  CHECK_THROWS_AS(parse_digit_text("12", Base(2)), std::invalid_argument);
  CHECK_THROWS_AS(parse_digit_text("1x", Base(10)), std::invalid_argument);
  // Formatting is only defined up to base 36.
  DigitString wide(Base(37));
  wide.append(36);
  CHECK_THROWS_AS(format_digits(wide), std::invalid_argument);
}

TEST_CASE("digit strings reject out-of-range digits") {
  DigitString d(Base(10));
  d.append(9);
  CHECK_THROWS_AS(d.append(10), std::invalid_argument);
  CHECK(d.size() == 1);
  CHECK_THROWS_AS(DigitString(Base(2), std::vector<std::uint8_t>{0, 2}),
                  std::invalid_argument);
}

TEST_CASE("pattern must be non-empty and in range") {
  CHECK_THROWS_AS(Pattern(DigitString(Base(10))), std::invalid_argument);
  CHECK_THROWS_AS(Pattern(Base(2), std::vector<std::uint8_t>{3}),
                  std::invalid_argument);
  Pattern p(Base(10), parse_digit_text("49", Base(10)));
  CHECK(p.size() == 2);
}

TEST_CASE("checked_pow and pow_or_throw") {
  CHECK(checked_pow(10, 0) == u64{1});
  CHECK(checked_pow(10, 19) == u64{10000000000000000000ull});
  CHECK(!checked_pow(10, 20).has_value());
  CHECK(checked_pow(2, 63) == (u64{1} << 63));
  CHECK(!checked_pow(2, 64).has_value());
  CHECK(pow_or_throw(3, 4, "x") == 81);
  CHECK_THROWS_AS(pow_or_throw(2, 64, "x"), std::overflow_error);
}

} // TEST_SUITE
