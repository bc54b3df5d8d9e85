#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace normlab {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Thrown when a structural fact the library is supposed to uphold is found
/// violated at runtime (as opposed to a rejected precondition, which is
/// reported as std::invalid_argument). The CLI maps this to exit code 1.
class invariant_violation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// base^exp, or nullopt if the value does not fit in 64 bits.
std::optional<u64> checked_pow(u64 base, unsigned exp) noexcept;

/// base^exp, throwing std::overflow_error(what) when it does not fit.
u64 pow_or_throw(u64 base, unsigned exp, const char* what);

}  // namespace normlab
