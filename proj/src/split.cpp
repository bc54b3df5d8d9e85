#include "normlab/split.hpp"

#include <gmp.h>

#include <algorithm>
#include <unordered_map>

#include "normlab/normality.hpp"

namespace normlab {

namespace {

u64 mul_or_throw(u64 a, u64 b, const char* what) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error(what);
  return r;
}

// floor((base^num)^(1/den)) with an exactness flag.
u64 root_pow(u64 base, u64 num, u64 den, bool* exact) {
  if (den == 0) throw std::invalid_argument("root index must be >= 1");
  if (num > 1'000'000 || den > 1'000'000)
    throw std::invalid_argument("root exponent out of supported range");
  mpz_t t, r;
  mpz_init(t);
  mpz_init(r);
  mpz_ui_pow_ui(t, static_cast<unsigned long>(base), static_cast<unsigned long>(num));
  int is_exact = mpz_root(r, t, static_cast<unsigned long>(den));
  if (!mpz_fits_ulong_p(r)) {
    mpz_clear(t);
    mpz_clear(r);
    throw std::overflow_error("integer root does not fit in 64 bits");
  }
  u64 result = mpz_get_ui(r);
  mpz_clear(t);
  mpz_clear(r);
  if (exact) *exact = is_exact != 0;
  return result;
}

}  // namespace

u64 floor_root_pow(u64 base, u64 num, u64 den) {
  return root_pow(base, num, den, nullptr);
}

u64 ceil_root_pow(u64 base, u64 num, u64 den) {
  bool exact = false;
  u64 r = root_pow(base, num, den, &exact);
  return exact ? r : r + 1;
}

SplitParams make_params(u64 m, Base g, const Rational& delta) {
  if (m < 2) throw std::invalid_argument("split parameters require m >= 2");
  if (delta.num() == 0 || delta >= Rational(1, 1))
    throw std::invalid_argument("delta must lie strictly between 0 and 1");
  if (delta.den() > 64)
    throw std::invalid_argument("delta denominator must be <= 64");
  SplitParams params;
  params.m = m;
  params.g = g;
  params.delta = delta;
  u64 m2 = mul_or_throw(m, m, "m^2 does not fit in 64 bits");
  params.ell = digit_length(m2, g) / 2;
  // m' = floor(m^(1 - p/2q)) = floor((m^(2q-p))^(1/2q)) for delta = p/q.
  u64 p = delta.num(), q = delta.den();
  params.m_prime = floor_root_pow(m, 2 * q - p, 2 * q);
  if (params.m_prime < 1 || params.m_prime > m)
    throw invariant_violation("m' fell outside [1, m]");
  return params;
}

u64 gap_threshold(u64 m, const Rational& delta) {
  // ceil(m^(3p/4q)) for delta = p/q, in lowest terms first.
  Rational e(3 * delta.num(), 4 * delta.den());
  return ceil_root_pow(m, e.num(), e.den());
}

SplitPair split(u64 n, const SplitParams& params) {
  if (params.ell == 0)
    throw std::invalid_argument(
        "split is undefined at ell = 0 (m too small for this base)");
  if (n < params.m_prime || n > params.m)
    throw std::invalid_argument("n must lie in [m', m]");
  u64 n2 = mul_or_throw(n, n, "n^2 does not fit in 64 bits");
  if (digit_length(n2, params.g) <= params.ell)
    throw std::invalid_argument(
        "split undefined: L(n^2) <= ell for this n (expected only at small m)");
  u64 modulus = pow_or_throw(params.g.value(), params.ell,
                             "g^ell does not fit in 64 bits");
  SplitPair pair;
  pair.n = n;
  pair.b = n2 / modulus;
  pair.c = n2 % modulus;
  pair.c_string = to_digits_padded(pair.c, params.g, params.ell);
  // Division identity.
  if (pair.b * modulus + pair.c != n2 || pair.c >= modulus || pair.b == 0)
    throw invariant_violation("split division identity failed");
  // Concatenation identity: head digits followed by the padded tail must
  // reproduce the digits of n^2 exactly.
  DigitString f = to_digits(n2, params.g);
  DigitString joined = to_digits(pair.b, params.g);
  joined.append(pair.c_string);
  if (joined != f)
    throw invariant_violation("split concatenation identity failed");
  return pair;
}

BoundaryCheck boundary_inequality_check(u64 n, const SplitParams& params, unsigned k) {
  if (k == 0) throw std::invalid_argument("pattern length k must be >= 1");
  SplitPair pair = split(n, params);
  u64 n2 = n * n;
  DigitString f = to_digits(n2, params.g);
  DigitString b = to_digits(pair.b, params.g);
  const DigitString& c = pair.c_string;

  // Tally window codes of each string; only windows that actually occur in
  // one of the three strings can contribute to the discrepancy.
  auto gk = checked_pow(params.g.value(), k);
  if (!gk) throw std::invalid_argument("g^k does not fit in 64 bits");
  struct Tally {
    u64 f = 0, b = 0, c = 0;
  };
  std::unordered_map<u64, Tally> tallies;
  auto scan = [&](const DigitString& s, u64 Tally::* slot) {
    auto digits = s.digits();
    if (digits.size() < k) return;
    u64 code = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      code = (code * params.g.value() + digits[i]) % *gk;
      if (i + 1 >= k) tallies[code].*slot += 1;
    }
  };
  scan(f, &Tally::f);
  scan(b, &Tally::b);
  scan(c, &Tally::c);

  BoundaryCheck check;
  check.bound = k - 1;
  for (const auto& [code, t] : tallies) {
    u64 sum = t.b + t.c;
    u64 diff = t.f > sum ? t.f - sum : sum - t.f;
    check.max_discrepancy = std::max(check.max_discrepancy, diff);
  }
  if (check.max_discrepancy > check.bound)
    throw invariant_violation(
        "boundary discrepancy exceeded k-1, which should be impossible");
  return check;
}

namespace {

// Per-chunk view of the run-length structure of the non-decreasing map
// n -> b(n): the first and last runs stay unresolved until neighbours are
// known; interior runs are folded immediately.
struct GapChunk {
  bool empty = true;
  bool single_run = true;
  u64 lead_b = 0, lead_len = 0;
  u64 tail_b = 0, tail_len = 0;
  u64 interior_max = 0;
  u64 interior_violations = 0;
};

u64 run_violations(u64 run, u64 threshold) {
  // Pairs (n1, n2) inside one run (consecutive n) with n2 - n1 >= threshold.
  if (run <= threshold) return 0;
  u64 extra = run - threshold;
  return extra * (extra + 1) / 2;
}

struct GapFold {
  bool have_tail = false;
  u64 tail_b = 0, tail_len = 0;
  u64 max_run = 0;
  u64 violations = 0;

  void close_run(u64 len, u64 threshold) {
    max_run = std::max(max_run, len);
    violations += run_violations(len, threshold);
  }

  void absorb(const GapChunk& chunk, u64 threshold) {
    if (chunk.empty) return;
    u64 lead_b = chunk.lead_b;
    u64 lead_len = chunk.lead_len;
    if (have_tail) {
      if (tail_b == lead_b) {
        lead_len += tail_len;
      } else {
        if (tail_b > lead_b)
          throw invariant_violation("b must be non-decreasing across chunks");
        close_run(tail_len, threshold);
      }
    }
    if (chunk.single_run) {
      tail_b = lead_b;
      tail_len = lead_len;
    } else {
      close_run(lead_len, threshold);
      max_run = std::max(max_run, chunk.interior_max);
      violations += chunk.interior_violations;
      tail_b = chunk.tail_b;
      tail_len = chunk.tail_len;
    }
    have_tail = true;
  }

  void finish(u64 threshold) {
    if (have_tail) close_run(tail_len, threshold);
  }
};

}  // namespace

GapCensus b_gap_census(const SplitParams& params, const Executor& ex) {
  if (params.ell == 0)
    throw std::invalid_argument("gap census undefined at ell = 0");
  const u64 modulus = pow_or_throw(params.g.value(), params.ell,
                                   "g^ell does not fit in 64 bits");
  const u64 b_cap = mul_or_throw(params.g.value(), params.m,
                                 "g*m does not fit in 64 bits");
  const u64 threshold = gap_threshold(params.m, params.delta);
  auto scan = [&](u64 lo, u64 hi) {
    GapChunk chunk;
    u64 prev_b = 0;
    for (u64 n = lo; n < hi; ++n) {
      u64 b = n * n / modulus;
      if (b < 1 || b > b_cap)
        throw invariant_violation("b left the interval [1, g*m]");
      if (chunk.empty) {
        chunk.empty = false;
        chunk.lead_b = b;
        chunk.lead_len = 1;
      } else if (b == prev_b) {
        if (chunk.single_run) ++chunk.lead_len;
        else ++chunk.tail_len;
      } else {
        if (b < prev_b)
          throw invariant_violation("b must be non-decreasing in n");
        if (!chunk.single_run) {
          // The tail run just ended; it is now interior.
          chunk.interior_max = std::max(chunk.interior_max, chunk.tail_len);
          chunk.interior_violations += run_violations(chunk.tail_len, threshold);
        }
        chunk.single_run = false;
        chunk.tail_b = b;
        chunk.tail_len = 1;
      }
      prev_b = b;
    }
    return chunk;
  };
  GapFold fold;
  for (const GapChunk& chunk :
       ex.run_chunks<GapChunk>(params.m_prime, params.m + 1, scan))
    fold.absorb(chunk, threshold);
  fold.finish(threshold);

  GapCensus census;
  census.m_prime = params.m_prime;
  census.m = params.m;
  census.gap_threshold = threshold;
  census.min_gap_violations = fold.violations;
  census.max_multiplicity = fold.max_run;
  census.multiplicity_within_threshold = fold.max_run <= threshold;
  return census;
}

HalfCensus half_census(const SplitParams& params, const Rational& eps, unsigned k,
                       const Executor& ex) {
  if (params.ell == 0)
    throw std::invalid_argument("half census undefined at ell = 0");
  const u64 modulus = pow_or_throw(params.g.value(), params.ell,
                                   "g^ell does not fit in 64 bits");
  const Rational two_eps = eps.scaled(2);
  auto scan = [&](u64 lo, u64 hi) {
    HalfCensus part;
    NormalityTester half_tester(params.g, k, eps);
    NormalityTester full_tester(params.g, k, two_eps);
    std::array<std::uint8_t, 64> buf;
    auto digits_of = [&](u64 v) {
      std::size_t i = buf.size();
      do {
        buf[--i] = static_cast<std::uint8_t>(v % params.g.value());
        v /= params.g.value();
      } while (v > 0);
      return std::span<const std::uint8_t>(buf.data() + i, buf.size() - i);
    };
    std::vector<std::uint8_t> tail(params.ell);
    for (u64 n = lo; n < hi; ++n) {
      ++part.total;
      u64 n2 = n * n;
      u64 full_len = digit_length(n2, params.g);
      if (full_len <= params.ell) {
        ++part.split_undefined;
        continue;
      }
      u64 b = n2 / modulus;
      u64 c = n2 % modulus;
      for (std::size_t i = params.ell; i-- > 0;) {
        tail[i] = static_cast<std::uint8_t>(c % params.g.value());
        c /= params.g.value();
      }
      bool b_ok = half_tester.test(digits_of(b));
      bool c_ok = half_tester.test(tail);
      bool f_ok = full_tester.test(digits_of(n2));
      // Proviso k <= eps * L(n^2), cleared of fractions.
      bool proviso = static_cast<u128>(k) * eps.den() <=
                     static_cast<u128>(eps.num()) * full_len;
      if (!b_ok) ++part.b_bad;
      if (!c_ok) ++part.c_bad;
      if (!f_ok) ++part.f_bad_2eps;
      if (!proviso) ++part.proviso_failures;
      if (!f_ok && b_ok && c_ok && proviso) ++part.containment_violations;
    }
    return part;
  };
  HalfCensus census;
  for (const HalfCensus& part :
       ex.run_chunks<HalfCensus>(params.m_prime, params.m + 1, scan)) {
    census.total += part.total;
    census.b_bad += part.b_bad;
    census.c_bad += part.c_bad;
    census.f_bad_2eps += part.f_bad_2eps;
    census.containment_violations += part.containment_violations;
    census.proviso_failures += part.proviso_failures;
    census.split_undefined += part.split_undefined;
  }
  return census;
}

}  // namespace normlab
