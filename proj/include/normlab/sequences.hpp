#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "normlab/digits.hpp"
#include "normlab/executor.hpp"
#include "normlab/rational.hpp"

namespace normlab {

/// The integer sequences whose digit strings get concatenated into
/// 0.f(1)f(2)f(3)...  Every kind maps each n >= 1 to a positive integer;
/// largest_prime_factor(1) is defined as 1 so the sequence starts at n = 1
/// like the others.
enum class SequenceKind {
  identity,              // f(n) = n
  square,                // f(n) = n^2
  cube,                  // f(n) = n^3
  prime,                 // f(n) = n-th prime
  totient,               // f(n) = Euler phi(n)
  sigma,                 // f(n) = sum of divisors of n
  largest_prime_factor,  // f(n) = largest prime dividing n; f(1) = 1
  isqrt,                 // f(n) = floor(sqrt(n))
};

struct SequenceSpec {
  SequenceKind kind = SequenceKind::square;
};

/// CLI names: identity square cube prime totient sigma lpf isqrt.
SequenceKind parse_sequence_kind(std::string_view name);
std::string_view sequence_kind_name(SequenceKind kind);

/// floor(sqrt(n)) by integer Newton iteration, with the exactness
/// post-check r^2 <= n < (r+1)^2.
u64 integer_sqrt(u64 n);

/// f(n) as a pure one-shot evaluation (per-call trial division / sieve for
/// the arithmetic kinds). For bulk sequential access use SequenceSource.
u64 seq_value(SequenceSpec spec, u64 n);

/// Amortized generator: keeps a growing prime list (for the prime kind) or a
/// growing smallest-prime-factor table (totient / sigma / lpf) so sequential
/// scans over [1, m] cost O(m log log m) total instead of per-n factoring.
class SequenceSource {
public:
  explicit SequenceSource(SequenceSpec spec) : spec_(spec) {}

  SequenceSpec spec() const noexcept { return spec_; }
  u64 value(u64 n);

private:
  SequenceSpec spec_;
  std::vector<u64> primes_;
  std::vector<std::uint32_t> spf_;  // spf_[i] = smallest prime factor of i

  void ensure_primes(u64 count);
  void ensure_spf(u64 n);
};

/// Endless cursor over the digits of the concatenation a1 a2 a3 ...
/// (base-g strings of f(n)), optionally starting at block n0. Single
/// consumer; parallel readers each construct their own stream.
class DigitStream {
public:
  DigitStream(SequenceSpec spec, Base g, u64 start_n = 1);

  Base base() const noexcept { return base_; }
  SequenceSpec spec() const noexcept { return source_.spec(); }
  u64 position() const noexcept { return emitted_; }  // digits handed out

  std::uint8_t next();
  /// Fills the whole buffer (the stream never ends) and returns out.size().
  u64 fill(std::span<std::uint8_t> out);

private:
  SequenceSource source_;
  Base base_;
  u64 n_;
  u64 emitted_ = 0;
  std::array<std::uint8_t, 64> block_;
  std::size_t block_len_ = 0;
  std::size_t block_pos_ = 0;

  void load_block();
};

/// First N digits of the concatenation constant as a digit string.
DigitString concat_prefix(SequenceSpec spec, Base g, u64 n_digits);

/// Exact digit-length statistics of a1..am: the raw material of the
/// length conditions (no one block length dominates the total).
struct LengthStats {
  u64 m = 0;
  u64 sum_length = 0;        // sum of L(f(n)) for n <= m
  u64 max_length = 0;
  Rational ratio_m_over_sum;     // m / sum
  Rational ratio_mmax_over_sum;  // m * max / sum  (always >= 1)
};

LengthStats length_stats(SequenceSpec spec, Base g, u64 m,
                         const Executor& ex = Executor(1));

/// Closed-form comparator (2/ln g) * m * ln m for the square-sequence length
/// sum, and the ratio of the exact sum to it. Requires m >= 2.
double length_sum_closed_form(Base g, u64 m);
double mlengths_ratio(SequenceSpec spec, Base g, u64 m,
                      const Executor& ex = Executor(1));

}  // namespace normlab
