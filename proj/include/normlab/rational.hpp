#pragma once

#include <string>
#include <string_view>

#include "normlab/common.hpp"

namespace normlab {

/// Non-negative rational kept in lowest terms. Comparisons cross-multiply in
/// 128-bit arithmetic, so they are exact for any representable operands.
class Rational {
public:
  Rational() = default;                 // 0/1
  Rational(u64 num, u64 den);           // reduces; throws on den == 0

  u64 num() const noexcept { return num_; }
  u64 den() const noexcept { return den_; }

  double to_double() const noexcept;
  std::string str() const;              // "num/den", or "num" when den == 1

  /// This value times an integer factor (reduced; throws std::overflow_error
  /// if the product leaves 64 bits).
  Rational scaled(u64 factor) const;

  /// Parses "p" or "p/q" with non-negative decimal integers, q > 0.
  static Rational parse(std::string_view text);

  friend bool operator==(const Rational&, const Rational&) = default;

private:
  u64 num_ = 0;
  u64 den_ = 1;
};

bool operator<(const Rational& a, const Rational& b);
bool operator<=(const Rational& a, const Rational& b);
bool operator>(const Rational& a, const Rational& b);
bool operator>=(const Rational& a, const Rational& b);

}  // namespace normlab
