#include "normlab/digits.hpp"

#include <algorithm>
#include <array>

namespace normlab {

Base::Base(unsigned g) : g_(static_cast<std::uint16_t>(g)) {
  if (g < 2 || g > 256)
    throw std::invalid_argument("base must satisfy 2 <= g <= 256");
}

DigitString::DigitString(Base g, std::vector<std::uint8_t> digits)
    : base_(g), digits_(std::move(digits)) {
  for (std::uint8_t d : digits_)
    if (d >= base_.value())
      throw std::invalid_argument("digit out of range for base");
}

void DigitString::append(std::uint8_t digit) {
  if (digit >= base_.value())
    throw std::invalid_argument("digit out of range for base");
  digits_.push_back(digit);
}

void DigitString::append(const DigitString& other) {
  if (other.base_ != base_)
    throw std::invalid_argument("cannot append digit strings of different bases");
  digits_.insert(digits_.end(), other.digits_.begin(), other.digits_.end());
}

Pattern::Pattern(Base g, std::vector<std::uint8_t> digits)
    : base_(g), digits_(std::move(digits)) {
  if (digits_.empty()) throw std::invalid_argument("pattern must be non-empty");
  for (std::uint8_t d : digits_)
    if (d >= base_.value())
      throw std::invalid_argument("pattern digit out of range for base");
}

Pattern::Pattern(const DigitString& s)
    : Pattern(s.base(), std::vector<std::uint8_t>(s.digits().begin(), s.digits().end())) {}

DigitString to_digits(u64 a, Base g) {
  std::array<std::uint8_t, 64> buf;  // 64 binary digits is the 64-bit worst case
  std::size_t n = 0;
  do {
    buf[n++] = static_cast<std::uint8_t>(a % g.value());
    a /= g.value();
  } while (a > 0);
  std::vector<std::uint8_t> digits(n);
  for (std::size_t i = 0; i < n; ++i) digits[i] = buf[n - 1 - i];
  return DigitString(g, std::move(digits));
}

DigitString to_digits_padded(u64 a, Base g, unsigned len) {
  std::vector<std::uint8_t> digits(len, 0);
  std::size_t i = len;
  while (a > 0) {
    if (i == 0)
      throw std::invalid_argument("value does not fit in the requested width");
    digits[--i] = static_cast<std::uint8_t>(a % g.value());
    a /= g.value();
  }
  return DigitString(g, std::move(digits));
}

unsigned digit_length(u64 a, Base g) {
  if (a == 0) throw std::invalid_argument("digit_length requires a >= 1");
  unsigned n = 0;
  while (a > 0) {
    ++n;
    a /= g.value();
  }
  return n;
}

DigitString concat(std::span<const DigitString> parts) {
  if (parts.empty())
    throw std::invalid_argument("concat requires at least one part");
  DigitString out(parts.front().base());
  for (const DigitString& p : parts) out.append(p);
  return out;
}

u64 digit_value(const DigitString& s) {
  u64 value = 0;
  for (std::uint8_t d : s.digits()) {
    if (__builtin_mul_overflow(value, static_cast<u64>(s.base().value()), &value) ||
        __builtin_add_overflow(value, static_cast<u64>(d), &value))
      throw std::overflow_error("digit string value does not fit in 64 bits");
  }
  return value;
}

static constexpr std::string_view kAlphabet = "0123456789abcdefghijklmnopqrstuvwxyz";

std::string format_digits(std::span<const std::uint8_t> digits, Base g) {
  if (g.value() > 36)
    throw std::invalid_argument("text form requires base <= 36");
  std::string out;
  out.reserve(digits.size());
  for (std::uint8_t d : digits) out.push_back(kAlphabet[d]);
  return out;
}

std::string format_digits(const DigitString& s) {
  return format_digits(s.digits(), s.base());
}

std::vector<std::uint8_t> parse_digit_text(std::string_view text, Base g) {
  if (g.value() > 36)
    throw std::invalid_argument("text form requires base <= 36");
  std::vector<std::uint8_t> digits;
  digits.reserve(text.size());
  for (char c : text) {
    unsigned v;
    if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'z') v = static_cast<unsigned>(c - 'a') + 10;
    else if (c >= 'A' && c <= 'Z') v = static_cast<unsigned>(c - 'A') + 10;
    else throw std::invalid_argument("invalid digit character");
    if (v >= g.value())
      throw std::invalid_argument("digit out of range for base");
    digits.push_back(static_cast<std::uint8_t>(v));
  }
  return digits;
}

}  // namespace normlab
