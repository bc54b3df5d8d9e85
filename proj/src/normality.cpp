#include "normlab/normality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace normlab {

namespace {

constexpr u128 kU128Max = ~static_cast<u128>(0);

u128 mul_u128_or_throw(u128 a, u128 b) {
  if (a != 0 && b > kU128Max / a)
    throw std::overflow_error("normality comparison exceeds 128-bit range");
  return a * b;
}


// splitmix64: tiny counter-based generator, stable across platforms (the
// standard distributions make no cross-implementation guarantees).
u64 splitmix64(u64& state) {
  state += 0x9E3779B97F4A7C15ull;
  u64 z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Unbiased uniform draw from [0, bound) by rejection.
u64 bounded_uniform(u64& state, u64 bound) {
  u64 limit = std::numeric_limits<u64>::max() - std::numeric_limits<u64>::max() % bound;
  for (;;) {
    u64 v = splitmix64(state);
    if (v < limit) return v % bound;
  }
}

double census_delta_hat(double bad, double total) {
  if (total <= 1.0) return 0.0;
  return 1.0 - std::log(std::max(bad, 1.0)) / std::log(total);
}

}  // namespace

NormalityTester::NormalityTester(Base g, unsigned k, Rational eps)
    : g_(g), k_(k), eps_(eps) {
  if (k == 0) throw std::invalid_argument("pattern length k must be >= 1");
  auto gk = checked_pow(g.value(), k);
  if (!gk)
    throw std::invalid_argument("g^k does not fit in 64 bits; k too large");
  gk_ = *gk;
  dense_ = gk_ <= 1'000'000;
  if (dense_) counts_.assign(gk_, 0);
  // An absent pattern deviates by exactly g^-k; acceptable iff g^-k <= eps.
  absent_ok_ = static_cast<u128>(eps_.den()) <=
               mul_u128_or_throw(eps_.num(), gk_);
}

bool NormalityTester::within_eps(u64 occurrences, u64 length) const {
  u128 scaled = mul_u128_or_throw(occurrences, gk_);
  u128 diff = scaled > length ? scaled - length : static_cast<u128>(length) - scaled;
  u128 lhs = mul_u128_or_throw(diff, eps_.den());
  u128 rhs = mul_u128_or_throw(mul_u128_or_throw(length, gk_), eps_.num());
  return lhs <= rhs;
}

bool NormalityTester::test(std::span<const std::uint8_t> digits) {
  const u64 length = digits.size();
  if (length == 0) throw std::invalid_argument("empty digit string");
  // Reset from the previous call.
  if (dense_) {
    for (u64 code : touched_) counts_[code] = 0;
    touched_.clear();
  } else {
    sparse_.clear();
  }

  u64 distinct = 0;
  if (length >= k_) {
    u64 code = 0;
    for (u64 i = 0; i < length; ++i) {
      std::uint8_t d = digits[i];
      if (d >= g_.value())
        throw std::invalid_argument("digit out of range for base");
      code = (code * g_.value() + d) % gk_;
      if (i + 1 < k_) continue;
      if (dense_) {
        if (counts_[code]++ == 0) touched_.push_back(code);
      } else {
        ++sparse_[code];
      }
    }
    distinct = dense_ ? touched_.size() : sparse_.size();
  }

  if (distinct < gk_ && !absent_ok_) return false;
  if (dense_) {
    for (u64 code : touched_)
      if (!within_eps(counts_[code], length)) return false;
  } else {
    for (const auto& [code, count] : sparse_)
      if (!within_eps(count, length)) return false;
  }
  return true;
}

bool NormalityTester::test(const DigitString& s) {
  if (s.base() != g_)
    throw std::invalid_argument("string base does not match tester");
  return test(s.digits());
}

bool is_eps_k_normal(const DigitString& s, const Rational& eps, unsigned k) {
  NormalityTester tester(s.base(), k, eps);
  return tester.test(s);
}

CensusReport integer_census(u64 m, const Rational& eps, unsigned k, Base g,
                            const Executor& ex) {
  if (m == 0) throw std::invalid_argument("census requires m >= 1");
  auto scan = [&](u64 lo, u64 hi) {
    NormalityTester tester(g, k, eps);
    std::array<std::uint8_t, 64> buf;
    u64 bad = 0;
    for (u64 n = lo; n < hi; ++n) {
      u64 v = n;
      std::size_t i = buf.size();
      do {
        buf[--i] = static_cast<std::uint8_t>(v % g.value());
        v /= g.value();
      } while (v > 0);
      if (!tester.test(std::span(buf.data() + i, buf.size() - i))) ++bad;
    }
    return bad;
  };
  CensusReport report;
  report.kind = "integers";
  report.lo = 1;
  report.hi = m;
  report.g = g.value();
  report.k = k;
  report.eps = eps;
  report.total = m;
  for (u64 bad : ex.run_chunks<u64>(1, m + 1, scan)) report.bad_count += bad;
  report.delta_hat = census_delta_hat(report.bad_count, static_cast<double>(m));
  return report;
}

CensusReport string_census_exact(unsigned ell, const Rational& eps, unsigned k,
                                 Base g, const Executor& ex) {
  if (ell == 0) throw std::invalid_argument("string length must be >= 1");
  auto population = checked_pow(g.value(), ell);
  if (!population || *population > 10'000'000)
    throw std::invalid_argument(
        "exact string census requires g^ell <= 10^7; use sampled mode");
  const u64 total = *population;
  auto scan = [&](u64 lo, u64 hi) {
    NormalityTester tester(g, k, eps);
    // Odometer enumeration: decode lo once, then increment in place.
    std::vector<std::uint8_t> s(ell);
    u64 v = lo;
    for (std::size_t i = ell; i-- > 0;) {
      s[i] = static_cast<std::uint8_t>(v % g.value());
      v /= g.value();
    }
    u64 bad = 0;
    for (u64 value = lo; value < hi; ++value) {
      if (!tester.test(s)) ++bad;
      for (std::size_t i = ell; i-- > 0;) {
        if (++s[i] < g.value()) break;
        s[i] = 0;
      }
    }
    return bad;
  };
  CensusReport report;
  report.kind = "strings";
  report.length = ell;
  report.g = g.value();
  report.k = k;
  report.eps = eps;
  report.total = total;
  for (u64 bad : ex.run_chunks<u64>(0, total, scan)) report.bad_count += bad;
  report.delta_hat =
      census_delta_hat(report.bad_count, static_cast<double>(total));
  return report;
}

CensusReport string_census_sampled(unsigned ell, const Rational& eps, unsigned k,
                                   Base g, u64 sample_size, u64 seed,
                                   const Executor& ex) {
  if (ell == 0) throw std::invalid_argument("string length must be >= 1");
  if (sample_size == 0) throw std::invalid_argument("sample size must be >= 1");
  auto scan = [&](u64 lo, u64 hi) {
    NormalityTester tester(g, k, eps);
    std::vector<std::uint8_t> s(ell);
    u64 bad = 0;
    for (u64 index = lo; index < hi; ++index) {
      // Draw sample #index from its own generator stream so the result is
      // independent of the chunking.
      u64 state = seed ^ ((index + 1) * 0xD1B54A32D192ED03ull);
      for (auto& d : s) d = static_cast<std::uint8_t>(bounded_uniform(state, g.value()));
      if (!tester.test(s)) ++bad;
    }
    return bad;
  };
  CensusReport report;
  report.kind = "strings";
  report.length = ell;
  report.g = g.value();
  report.k = k;
  report.eps = eps;
  report.total = sample_size;
  report.sampled = true;
  report.sample_size = sample_size;
  report.seed = seed;
  report.population = std::pow(static_cast<double>(g.value()), ell);
  for (u64 bad : ex.run_chunks<u64>(0, sample_size, scan)) report.bad_count += bad;
  // delta_hat from the estimated bad count in the full population.
  double est_bad = static_cast<double>(report.bad_count) /
                   static_cast<double>(sample_size) * report.population;
  report.delta_hat = census_delta_hat(est_bad, report.population);
  return report;
}

std::vector<TrajectoryPoint> normality_trajectory(SequenceSpec spec, Base g,
                                                  const Pattern& sigma,
                                                  std::span<const u64> checkpoints) {
  if (checkpoints.empty())
    throw std::invalid_argument("at least one checkpoint required");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] == 0)
      throw std::invalid_argument("checkpoints must be >= 1");
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
      throw std::invalid_argument("checkpoints must be strictly increasing");
  }
  if (Base(g) != sigma.base())
    throw std::invalid_argument("base and pattern base differ");
  DigitStream stream(spec, g, 1);
  StreamMatcher matcher(sigma);
  std::vector<std::uint8_t> buf(1u << 16);
  std::vector<TrajectoryPoint> points;
  points.reserve(checkpoints.size());
  u64 position = 0;
  for (u64 target : checkpoints) {
    u64 remaining = target - position;
    while (remaining > 0) {
      std::size_t take = static_cast<std::size_t>(std::min<u64>(remaining, buf.size()));
      stream.fill(std::span(buf.data(), take));
      matcher.feed(std::span<const std::uint8_t>(buf.data(), take));
      remaining -= take;
    }
    position = target;
    points.push_back({target, matcher.matches(), Rational(matcher.matches(), target)});
  }
  return points;
}

}  // namespace normlab
