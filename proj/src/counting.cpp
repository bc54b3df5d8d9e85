#include "normlab/counting.hpp"

#include <algorithm>

namespace normlab {

OccurrenceCount count_occurrences(const DigitString& s, const Pattern& sigma) {
  if (s.base() != sigma.base())
    throw std::invalid_argument("string and pattern bases differ");
  const auto text = s.digits();
  const auto pat = sigma.digits();
  OccurrenceCount out{0, text.size()};
  if (text.size() < pat.size()) return out;
  for (std::size_t i = 0; i + pat.size() <= text.size(); ++i) {
    if (std::equal(pat.begin(), pat.end(), text.begin() + i)) ++out.count;
  }
  return out;
}

PatternCounter::PatternCounter(Base g, unsigned k) : g_(g), k_(k) {
  if (k == 0) throw std::invalid_argument("pattern length k must be >= 1");
  auto gk = checked_pow(g.value(), k);
  if (!gk || *gk > 1'000'000)
    throw std::invalid_argument("dense counter requires g^k <= 10^6");
  gk_ = *gk;
  counts_.assign(gk_, 0);
  ring_.assign(k_ > 1 ? k_ - 1 : 0, 0);
}

void PatternCounter::absorb(std::uint8_t digit, bool counted) {
  if (digit >= g_.value())
    throw std::invalid_argument("digit out of range for base");
  code_ = (code_ * g_.value() + digit) % gk_;
  ++filled_;
  if (!ring_.empty()) {
    ring_[ring_pos_] = digit;
    ring_pos_ = (ring_pos_ + 1) % ring_.size();
  }
  if (counted) {
    ++consumed_;
    if (filled_ >= k_) ++counts_[code_];
  }
}

void PatternCounter::seed(std::span<const std::uint8_t> carry) {
  if (fed_) throw std::invalid_argument("seed() must precede feed()");
  if (carry.size() >= k_)
    throw std::invalid_argument("carry window longer than k-1");
  for (std::uint8_t d : carry) absorb(d, false);
  seeded_ = carry.size();
}

void PatternCounter::feed(std::uint8_t digit) {
  fed_ = true;
  absorb(digit, true);
}

void PatternCounter::feed(std::span<const std::uint8_t> digits) {
  for (std::uint8_t d : digits) feed(d);
}

u64 PatternCounter::windows() const noexcept {
  u64 seen = seeded_ + consumed_;
  if (seen < k_) return 0;
  // Windows end at counted digits only; the first k-1 absorbed digits
  // (whether seed or text) complete nothing.
  return std::min<u64>(consumed_, seen - k_ + 1);
}

u64 PatternCounter::count_of(const Pattern& sigma) const {
  if (sigma.base() != g_ || sigma.size() != k_)
    throw std::invalid_argument("pattern does not match counter shape");
  u64 code = 0;
  for (std::uint8_t d : sigma.digits()) code = code * g_.value() + d;
  return counts_[code];
}

std::vector<std::uint8_t> PatternCounter::carry_window() const {
  std::size_t have = std::min<u64>(filled_, ring_.size());
  std::vector<std::uint8_t> out(have);
  for (std::size_t i = 0; i < have; ++i)
    out[have - 1 - i] = ring_[(ring_pos_ + ring_.size() - 1 - i) % ring_.size()];
  return out;
}

void PatternCounter::merge(const PatternCounter& later) {
  if (later.g_ != g_ || later.k_ != k_)
    throw std::invalid_argument("cannot merge counters of different shape");
  for (u64 i = 0; i < gk_; ++i) counts_[i] += later.counts_[i];
  consumed_ += later.consumed_;
  // Adopt the later counter's window state so further feeding stays valid
  // (later's seed digits were already part of this counter's input).
  filled_ += later.consumed_;
  code_ = later.code_;
  ring_ = later.ring_;
  ring_pos_ = later.ring_pos_;
}

StreamMatcher::StreamMatcher(const Pattern& sigma)
    : g_(sigma.base()),
      pattern_(sigma.digits().begin(), sigma.digits().end()) {
  auto gk = checked_pow(g_.value(), static_cast<unsigned>(pattern_.size()));
  rolling_ = gk.has_value();
  if (rolling_) {
    gk_ = *gk;
    for (std::uint8_t d : pattern_) target_ = target_ * g_.value() + d;
  } else {
    ring_.assign(pattern_.size(), 0);
  }
}

void StreamMatcher::feed(std::uint8_t digit) {
  if (digit >= g_.value())
    throw std::invalid_argument("digit out of range for base");
  ++consumed_;
  ++filled_;
  const std::size_t k = pattern_.size();
  if (rolling_) {
    code_ = (code_ * g_.value() + digit) % gk_;
    if (filled_ >= k && code_ == target_) ++matches_;
  } else {
    ring_[ring_pos_] = digit;
    ring_pos_ = (ring_pos_ + 1) % k;
    if (filled_ >= k) {
      bool hit = true;
      for (std::size_t i = 0; i < k && hit; ++i)
        hit = ring_[(ring_pos_ + i) % k] == pattern_[i];
      if (hit) ++matches_;
    }
  }
}

void StreamMatcher::feed(std::span<const std::uint8_t> digits) {
  for (std::uint8_t d : digits) feed(d);
}

OccurrenceCount count_prefix(DigitStream& stream, u64 n_digits, const Pattern& sigma) {
  if (n_digits == 0) throw std::invalid_argument("prefix length must be >= 1");
  if (stream.base() != sigma.base())
    throw std::invalid_argument("stream and pattern bases differ");
  StreamMatcher matcher(sigma);
  std::vector<std::uint8_t> buf(std::min<u64>(n_digits, 1u << 16));
  u64 remaining = n_digits;
  while (remaining > 0) {
    std::size_t take = static_cast<std::size_t>(std::min<u64>(remaining, buf.size()));
    stream.fill(std::span(buf.data(), take));
    matcher.feed(std::span<const std::uint8_t>(buf.data(), take));
    remaining -= take;
  }
  return {matcher.matches(), n_digits};
}

BlockDecomposition block_decomposition_check(SequenceSpec spec, Base g, u64 m,
                                             const Pattern& sigma) {
  if (m == 0) throw std::invalid_argument("block decomposition requires m >= 1");
  if (Base(g) != sigma.base())
    throw std::invalid_argument("base and pattern base differ");
  SequenceSource source(spec);
  StreamMatcher whole(sigma);  // runs across block boundaries
  BlockDecomposition out;
  const std::size_t k = sigma.size();
  const auto pat = sigma.digits();
  std::array<std::uint8_t, 64> block;
  for (u64 n = 1; n <= m; ++n) {
    u64 v = source.value(n);
    std::size_t i = block.size();
    do {
      block[--i] = static_cast<std::uint8_t>(v % g.value());
      v /= g.value();
    } while (v > 0);
    std::span<const std::uint8_t> digits(block.data() + i, block.size() - i);
    whole.feed(digits);
    if (digits.size() >= k) {
      for (std::size_t j = 0; j + k <= digits.size(); ++j)
        if (std::equal(pat.begin(), pat.end(), digits.begin() + j))
          ++out.within_blocks;
    }
  }
  out.straddling = whole.matches() - out.within_blocks;
  u64 bound = static_cast<u64>(k - 1) * m;
  if (out.straddling > bound)
    throw invariant_violation(
        "straddling occurrences exceed (k-1)*m, which should be impossible");
  return out;
}

}  // namespace normlab
