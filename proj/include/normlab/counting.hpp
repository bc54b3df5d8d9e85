#pragma once

#include <span>
#include <utility>
#include <vector>

#include "normlab/digits.hpp"
#include "normlab/sequences.hpp"

namespace normlab {

/// An occurrence count together with the window (string length or prefix
/// length) it refers to. Occurrences may overlap, so
/// count <= max(window_length - k + 1, 0).
struct OccurrenceCount {
  u64 count = 0;
  u64 window_length = 0;
};

/// Number of positions i with s[i..i+k-1] == sigma (overlapping allowed).
OccurrenceCount count_occurrences(const DigitString& s, const Pattern& sigma);

/// Streaming counter for all g^k patterns at once, table-indexed by the
/// rolling base-g value of the current window. Dense, so g^k <= 10^6.
///
/// Merge contract: splitting a digit stream at any point and handing the
/// left counter's carry_window() to seed() of the right counter, then
/// merge()-ing, yields exactly the unsplit counts.
class PatternCounter {
public:
  PatternCounter(Base g, unsigned k);

  Base base() const noexcept { return g_; }
  unsigned k() const noexcept { return k_; }

  /// Pre-fills the rolling window with the digits preceding this counter's
  /// segment; they complete windows but are not themselves counted digits.
  /// Must be called before any feed().
  void seed(std::span<const std::uint8_t> carry);

  void feed(std::uint8_t digit);
  void feed(std::span<const std::uint8_t> digits);

  u64 consumed() const noexcept { return consumed_; }
  /// Completed windows so far (equals consumed - k + 1 for an unseeded
  /// counter once consumed >= k).
  u64 windows() const noexcept;

  u64 count_of(const Pattern& sigma) const;
  /// All counts, indexed by the base-g value of the k-digit pattern.
  std::span<const u64> counts() const noexcept { return counts_; }

  /// The last min(k-1, digits seen) digits, oldest first.
  std::vector<std::uint8_t> carry_window() const;

  /// Folds a later segment's counter into this one. `later` must have been
  /// seeded with this->carry_window() and fed the digits that follow this
  /// counter's segment; afterwards, this counter reads as if it had consumed
  /// both segments itself.
  void merge(const PatternCounter& later);

private:
  Base g_;
  unsigned k_;
  u64 gk_;
  std::vector<u64> counts_;
  std::vector<std::uint8_t> ring_;  // last k-1 digits, circular
  std::size_t ring_pos_ = 0;
  u64 code_ = 0;       // base-g value of the last min(filled, k) digits
  u64 filled_ = 0;     // digits absorbed into the window (seed + fed)
  u64 seeded_ = 0;
  u64 consumed_ = 0;
  bool fed_ = false;

  void absorb(std::uint8_t digit, bool counted);
};

/// Single-pattern streaming matcher with O(k) state; works for any k whose
/// window code fits 64 bits, falling back to a ring-buffer compare.
class StreamMatcher {
public:
  explicit StreamMatcher(const Pattern& sigma);

  void feed(std::uint8_t digit);
  void feed(std::span<const std::uint8_t> digits);
  u64 matches() const noexcept { return matches_; }
  u64 consumed() const noexcept { return consumed_; }

private:
  Base g_;
  std::vector<std::uint8_t> pattern_;
  bool rolling_;
  u64 gk_ = 0;        // g^k when rolling
  u64 target_ = 0;    // pattern's base-g value when rolling
  u64 code_ = 0;
  std::vector<std::uint8_t> ring_;
  std::size_t ring_pos_ = 0;
  u64 filled_ = 0;
  u64 consumed_ = 0;
  u64 matches_ = 0;
};

/// nu(x, N, sigma): occurrences lying entirely within the first N digits of
/// the stream. Single pass, O(k) memory beyond the stream cursor.
OccurrenceCount count_prefix(DigitStream& stream, u64 n_digits, const Pattern& sigma);

/// Splits nu(a1...am, sigma) into occurrences inside individual blocks and
/// occurrences straddling a block boundary; the straddling count can never
/// exceed (k-1) * m, and that bound is checked here.
struct BlockDecomposition {
  u64 within_blocks = 0;
  u64 straddling = 0;
};

BlockDecomposition block_decomposition_check(SequenceSpec spec, Base g, u64 m,
                                             const Pattern& sigma);

}  // namespace normlab
