#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "normlab/common.hpp"

namespace normlab {

/// A radix g with 2 <= g <= 256. Digits are stored as raw byte values
/// 0..g-1; bases up to 36 also have a text form using 0-9a-z.
class Base {
public:
  explicit Base(unsigned g);
  unsigned value() const noexcept { return g_; }

  friend bool operator==(Base, Base) = default;

private:
  std::uint16_t g_;
};

/// Finite string of base-g digits, most significant first. May be empty
/// (the identity of concatenation) and may carry leading zeros; both states
/// are meaningful and preserved.
class DigitString {
public:
  explicit DigitString(Base g) : base_(g) {}
  DigitString(Base g, std::vector<std::uint8_t> digits);

  Base base() const noexcept { return base_; }
  std::size_t size() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }
  std::uint8_t operator[](std::size_t i) const noexcept { return digits_[i]; }
  std::span<const std::uint8_t> digits() const noexcept { return digits_; }

  void append(std::uint8_t digit);
  void append(const DigitString& other);  // bases must match

  friend bool operator==(const DigitString&, const DigitString&) = default;

private:
  Base base_;
  std::vector<std::uint8_t> digits_;
};

/// A non-empty digit string used as a search pattern.
class Pattern {
public:
  Pattern(Base g, std::vector<std::uint8_t> digits);
  explicit Pattern(const DigitString& s);

  Base base() const noexcept { return base_; }
  std::size_t size() const noexcept { return digits_.size(); }
  std::span<const std::uint8_t> digits() const noexcept { return digits_; }

private:
  Base base_;
  std::vector<std::uint8_t> digits_;
};

/// Standard base-g expansion of a, most significant digit first.
/// to_digits(0) is the single digit "0".
DigitString to_digits(u64 a, Base g);

/// Expansion of a left-padded with zeros to exactly len digits.
/// Throws std::invalid_argument if a needs more than len digits.
DigitString to_digits_padded(u64 a, Base g, unsigned len);

/// Number of digits of a >= 1 in base g.
unsigned digit_length(u64 a, Base g);

/// Concatenation, left to right. All parts must share one base; an empty
/// part list is rejected (there is no base to give the result).
DigitString concat(std::span<const DigitString> parts);

/// Positional value sum s[i] * g^(n-1-i). Throws std::overflow_error when the
/// value does not fit in 64 bits; the empty string evaluates to 0.
u64 digit_value(const DigitString& s);

/// Text form using 0-9a-z; requires base <= 36. Empty string renders as "".
std::string format_digits(const DigitString& s);
std::string format_digits(std::span<const std::uint8_t> digits, Base g);

/// Inverse of format_digits (case-insensitive); every character must be a
/// valid digit for g. Requires base <= 36.
std::vector<std::uint8_t> parse_digit_text(std::string_view text, Base g);

}  // namespace normlab
