#include "normlab/common.hpp"

namespace normlab {

std::optional<u64> checked_pow(u64 base, unsigned exp) noexcept {
  u64 result = 1;
  u64 acc = base;
  while (exp > 0) {
    if (exp & 1u) {
      if (__builtin_mul_overflow(result, acc, &result)) return std::nullopt;
    }
    exp >>= 1u;
    if (exp > 0) {
      if (__builtin_mul_overflow(acc, acc, &acc)) return std::nullopt;
    }
  }
  return result;
}

u64 pow_or_throw(u64 base, unsigned exp, const char* what) {
  auto v = checked_pow(base, exp);
  if (!v) throw std::overflow_error(what);
  return *v;
}

}  // namespace normlab
