#include "normlab/rational.hpp"

#include <charconv>
#include <numeric>

namespace normlab {

Rational::Rational(u64 num, u64 den) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  u64 g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

double Rational::to_double() const noexcept {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::scaled(u64 factor) const {
  // Reduce factor against the denominator first so e.g. (1/10)*2 stays exact
  // even near the top of the range.
  u64 g = std::gcd(factor, den_);
  u64 f = factor / g;
  u64 d = den_ / g;
  u64 n;
  if (__builtin_mul_overflow(num_, f, &n))
    throw std::overflow_error("rational: scaled value does not fit in 64 bits");
  return Rational(n, d);
}

static u64 parse_u64(std::string_view text, const char* what) {
  u64 value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty())
    throw std::invalid_argument(what);
  return value;
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_u64(text, "rational: malformed integer"), 1);
  u64 p = parse_u64(text.substr(0, slash), "rational: malformed numerator");
  u64 q = parse_u64(text.substr(slash + 1), "rational: malformed denominator");
  if (q == 0) throw std::invalid_argument("rational: zero denominator");
  return Rational(p, q);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<u128>(a.num()) * b.den() < static_cast<u128>(b.num()) * a.den();
}
bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
bool operator>(const Rational& a, const Rational& b) { return b < a; }
bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

}  // namespace normlab
