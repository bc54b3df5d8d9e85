#include "normlab/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace normlab {

SequenceKind parse_sequence_kind(std::string_view name) {
  if (name == "identity") return SequenceKind::identity;
  if (name == "square") return SequenceKind::square;
  if (name == "cube") return SequenceKind::cube;
  if (name == "prime") return SequenceKind::prime;
  if (name == "totient") return SequenceKind::totient;
  if (name == "sigma") return SequenceKind::sigma;
  if (name == "lpf") return SequenceKind::largest_prime_factor;
  if (name == "isqrt") return SequenceKind::isqrt;
  throw std::invalid_argument("unknown sequence kind: " + std::string(name));
}

std::string_view sequence_kind_name(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::identity: return "identity";
    case SequenceKind::square: return "square";
    case SequenceKind::cube: return "cube";
    case SequenceKind::prime: return "prime";
    case SequenceKind::totient: return "totient";
    case SequenceKind::sigma: return "sigma";
    case SequenceKind::largest_prime_factor: return "lpf";
    case SequenceKind::isqrt: return "isqrt";
  }
  throw std::invalid_argument("unknown sequence kind");
}

u64 integer_sqrt(u64 n) {
  if (n < 2) return n;
  // Newton from a floating seed, then correct; the post-check below makes the
  // result exact regardless of the seed's rounding.
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && (r > n / r)) --r;              // r^2 <= n
  while ((r + 1) <= n / (r + 1)) ++r;            // (r+1)^2 > n
  return r;
}

namespace {

u64 mul_or_throw(u64 a, u64 b, const char* what) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error(what);
  return r;
}

// Simple sieve of [2, limit]; returns the primes in order.
std::vector<u64> sieve_primes(u64 limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<u64> primes;
  for (u64 p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (u64 q = p * p; q <= limit; q += p) composite[q] = true;
  }
  return primes;
}

u64 nth_prime_upper_bound(u64 n) {
  if (n < 6) return 13;
  double x = static_cast<double>(n);
  double b = x * (std::log(x) + std::log(std::log(x)));
  return static_cast<u64>(b) + 16;
}

struct FactorScan {
  u64 totient = 1;
  u64 sigma = 1;
  u64 largest = 1;
};

// One pass of trial division collecting everything the arithmetic kinds need.
FactorScan factor_scan(u64 n) {
  FactorScan out;
  auto absorb = [&](u64 p, unsigned e) {
    u64 pe = 1;                       // p^e
    u64 geo = 1;                      // 1 + p + ... + p^e
    for (unsigned i = 0; i < e; ++i) {
      pe = mul_or_throw(pe, p, "factor power overflow");
      geo = geo + pe;
    }
    out.totient = mul_or_throw(out.totient, pe / p * (p - 1), "totient overflow");
    out.sigma = mul_or_throw(out.sigma, geo, "sigma overflow");
    out.largest = p;
  };
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    absorb(p, e);
  }
  if (n > 1) absorb(n, 1);
  return out;
}

}  // namespace

u64 seq_value(SequenceSpec spec, u64 n) {
  if (n == 0) throw std::invalid_argument("sequence index must be >= 1");
  switch (spec.kind) {
    case SequenceKind::identity:
      return n;
    case SequenceKind::square:
      return mul_or_throw(n, n, "n^2 does not fit in 64 bits");
    case SequenceKind::cube:
      return mul_or_throw(mul_or_throw(n, n, "n^3 does not fit in 64 bits"), n,
                          "n^3 does not fit in 64 bits");
    case SequenceKind::prime: {
      auto primes = sieve_primes(nth_prime_upper_bound(n));
      if (n > primes.size())
        throw std::overflow_error("prime bound estimate failed");  // unreachable
      return primes[n - 1];
    }
    case SequenceKind::totient:
      return n == 1 ? 1 : factor_scan(n).totient;
    case SequenceKind::sigma:
      return n == 1 ? 1 : factor_scan(n).sigma;
    case SequenceKind::largest_prime_factor:
      return n == 1 ? 1 : factor_scan(n).largest;
    case SequenceKind::isqrt:
      return integer_sqrt(n);
  }
  throw std::invalid_argument("unknown sequence kind");
}

void SequenceSource::ensure_primes(u64 count) {
  if (primes_.size() >= count) return;
  u64 target = std::max<u64>(count, primes_.size() * 2);
  primes_ = sieve_primes(nth_prime_upper_bound(target));
  if (primes_.size() < count)
    throw std::overflow_error("prime bound estimate failed");  // unreachable
}

void SequenceSource::ensure_spf(u64 n) {
  if (spf_.size() > n) return;
  if (n >= (u64{1} << 32))
    throw std::invalid_argument("factor-table kinds are limited to n < 2^32");
  u64 limit = std::max<u64>(n + 1, std::max<u64>(spf_.size() * 2, 1024));
  spf_.assign(limit, 0);
  for (u64 i = 2; i < limit; ++i) {
    if (spf_[i] != 0) continue;
    for (u64 j = i; j < limit; j += i)
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
  }
}

u64 SequenceSource::value(u64 n) {
  if (n == 0) throw std::invalid_argument("sequence index must be >= 1");
  switch (spec_.kind) {
    case SequenceKind::prime:
      ensure_primes(n);
      return primes_[n - 1];
    case SequenceKind::totient:
    case SequenceKind::sigma:
    case SequenceKind::largest_prime_factor: {
      if (n == 1) return 1;
      ensure_spf(n);
      // Walk the factorization using the smallest-prime-factor table.
      u64 totient = 1, sigma = 1, largest = 1, rest = n;
      while (rest > 1) {
        u64 p = spf_[rest];
        u64 pe = 1, geo = 1;
        while (rest % p == 0) {
          rest /= p;
          pe *= p;
          geo += pe;
        }
        totient *= pe / p * (p - 1);
        sigma = mul_or_throw(sigma, geo, "sigma overflow");
        largest = p;
      }
      if (spec_.kind == SequenceKind::totient) return totient;
      if (spec_.kind == SequenceKind::sigma) return sigma;
      return largest;
    }
    default:
      return seq_value(spec_, n);
  }
}

DigitStream::DigitStream(SequenceSpec spec, Base g, u64 start_n)
    : source_(spec), base_(g), n_(start_n) {
  if (start_n == 0) throw std::invalid_argument("stream must start at n >= 1");
}

void DigitStream::load_block() {
  u64 v = source_.value(n_++);
  // Write the digits of v most-significant-first into block_.
  std::size_t i = block_.size();
  do {
    block_[--i] = static_cast<std::uint8_t>(v % base_.value());
    v /= base_.value();
  } while (v > 0);
  block_len_ = block_.size() - i;
  if (i > 0) std::copy(block_.begin() + i, block_.end(), block_.begin());
  block_pos_ = 0;
}

std::uint8_t DigitStream::next() {
  if (block_pos_ >= block_len_) load_block();
  ++emitted_;
  return block_[block_pos_++];
}

u64 DigitStream::fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (block_pos_ >= block_len_) load_block();
    std::size_t take = std::min(out.size() - done, block_len_ - block_pos_);
    std::copy_n(block_.begin() + block_pos_, take, out.begin() + done);
    block_pos_ += take;
    done += take;
  }
  emitted_ += done;
  return done;
}

DigitString concat_prefix(SequenceSpec spec, Base g, u64 n_digits) {
  if (n_digits == 0) throw std::invalid_argument("prefix length must be >= 1");
  std::vector<std::uint8_t> buf(n_digits);
  DigitStream stream(spec, g, 1);
  stream.fill(buf);
  return DigitString(g, std::move(buf));
}

namespace {

bool kind_is_pure(SequenceKind k) {
  switch (k) {
    case SequenceKind::identity:
    case SequenceKind::square:
    case SequenceKind::cube:
    case SequenceKind::isqrt:
      return true;
    default:
      return false;
  }
}

}  // namespace

LengthStats length_stats(SequenceSpec spec, Base g, u64 m, const Executor& ex) {
  if (m == 0) throw std::invalid_argument("length_stats requires m >= 1");
  struct Part {
    u64 sum = 0;
    u64 max = 0;
  };
  auto scan = [&](u64 lo, u64 hi) {
    Part part;
    SequenceSource src(spec);
    for (u64 n = lo; n < hi; ++n) {
      u64 len = digit_length(src.value(n), g);
      part.sum += len;
      part.max = std::max(part.max, len);
    }
    return part;
  };
  // The sieved kinds would rebuild their tables once per chunk; keep those
  // single-threaded.
  Executor runner = kind_is_pure(spec.kind) ? ex : Executor(1);
  LengthStats stats;
  stats.m = m;
  for (const Part& part : runner.run_chunks<Part>(1, m + 1, scan)) {
    stats.sum_length += part.sum;
    stats.max_length = std::max(stats.max_length, part.max);
  }
  stats.ratio_m_over_sum = Rational(m, stats.sum_length);
  stats.ratio_mmax_over_sum = Rational(
      mul_or_throw(m, stats.max_length, "m * max_length does not fit in 64 bits"),
      stats.sum_length);
  return stats;
}

double length_sum_closed_form(Base g, u64 m) {
  if (m < 2) throw std::invalid_argument("closed form requires m >= 2");
  double md = static_cast<double>(m);
  return 2.0 / std::log(static_cast<double>(g.value())) * md * std::log(md);
}

double mlengths_ratio(SequenceSpec spec, Base g, u64 m, const Executor& ex) {
  double sum = static_cast<double>(length_stats(spec, g, m, ex).sum_length);
  return sum / length_sum_closed_form(g, m);
}

}  // namespace normlab
