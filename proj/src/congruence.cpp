#include "normlab/congruence.hpp"

#include <algorithm>
#include <cmath>

#include "normlab/normality.hpp"

namespace normlab {

namespace {

u64 mul_or_throw(u64 a, u64 b, const char* what) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error(what);
  return r;
}

bool is_prime(u64 p) {
  if (p < 2) return false;
  for (u64 d = 2; d * d <= p; d += (d == 2 ? 1 : 2))
    if (p % d == 0) return false;
  return true;
}

void require_prime(u64 p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
}

// 2or4 * p^e (1 - 1/p) ceil(e/2) + p^(2 floor(e/2)), the proof-internal
// count/bound shared by the exact odd formula and the p = 2 intermediate.
u64 layered_count(u64 p, unsigned e, u64 roots_per_square) {
  u64 pe = pow_or_throw(p, e, "p^e does not fit in 64 bits");
  u64 ceil_half = (e + 1) / 2;
  u64 head = mul_or_throw(mul_or_throw(roots_per_square, pe / p, "pair count overflow"),
                          (p - 1) * ceil_half, "pair count overflow");
  u64 tail = pow_or_throw(p, 2 * (e / 2), "pair count overflow");
  u64 r;
  if (__builtin_add_overflow(head, tail, &r))
    throw std::overflow_error("pair count overflow");
  return r;
}

}  // namespace

Factorization factorize(u64 v) {
  if (v == 0) throw std::invalid_argument("factorize requires v >= 1");
  Factorization out;
  out.value = v;
  for (u64 p = 2; p * p <= v; p += (p == 2 ? 1 : 2)) {
    if (v % p != 0) continue;
    unsigned e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  }
  if (v > 1) out.factors.push_back({v, 1});
  return out;
}

const char* pair_count_method_name(PairCountMethod method) {
  switch (method) {
    case PairCountMethod::exact_formula: return "exact_formula";
    case PairCountMethod::upper_bound: return "upper_bound";
    case PairCountMethod::brute_force: return "brute_force";
  }
  return "unknown";
}

PairCount square_pairs_exact_odd(u64 p, unsigned e) {
  if (p == 2)
    throw std::invalid_argument("the exact closed form requires an odd prime");
  require_prime(p);
  if (e == 0) throw std::invalid_argument("exponent must be >= 1");
  PairCount out;
  out.modulus = pow_or_throw(p, e, "p^e does not fit in 64 bits");
  out.count = layered_count(p, e, 2);
  out.method = PairCountMethod::exact_formula;
  return out;
}

PairCount square_pairs_bound(u64 p, unsigned e) {
  require_prime(p);
  if (e == 0) throw std::invalid_argument("exponent must be >= 1");
  PairCount out;
  out.modulus = pow_or_throw(p, e, "p^e does not fit in 64 bits");
  u64 scale = p == 2 ? 4 : 2;
  out.count = mul_or_throw(mul_or_throw(scale, e, "pair bound overflow"),
                           out.modulus, "pair bound overflow");
  out.method = PairCountMethod::upper_bound;
  return out;
}

PairCount square_pairs_intermediate(u64 p, unsigned e) {
  require_prime(p);
  if (e == 0) throw std::invalid_argument("exponent must be >= 1");
  PairCount out;
  out.modulus = pow_or_throw(p, e, "p^e does not fit in 64 bits");
  out.count = layered_count(p, e, p == 2 ? 4 : 2);
  out.method = p == 2 ? PairCountMethod::upper_bound : PairCountMethod::exact_formula;
  return out;
}

PairCount square_pairs_brute(u64 modulus, const Executor& ex) {
  if (modulus == 0) throw std::invalid_argument("modulus must be >= 1");
  if (modulus > 10'000'000)
    throw std::invalid_argument("brute-force pair count is guarded at M <= 10^7");
  const u64 M = modulus;
  // Histograms are M-sized; keep the parallel path to moderate M so worker
  // copies stay cheap.
  Executor runner = M <= 2'500'000 ? ex : Executor(1);
  auto scan = [&](u64 lo, u64 hi) {
    std::vector<std::uint32_t> hist(M, 0);
    for (u64 n = lo; n < hi; ++n) ++hist[n * n % M];
    return hist;
  };
  std::vector<std::uint32_t> hist(M, 0);
  for (const auto& part : runner.run_chunks<std::vector<std::uint32_t>>(0, M, scan))
    for (u64 i = 0; i < M; ++i) hist[i] += part[i];
  u64 total = 0;
  for (u64 i = 0; i < M; ++i)
    total += static_cast<u64>(hist[i]) * hist[i];
  return {M, total, PairCountMethod::brute_force};
}

PairCount crt_pair_bound(Base g, unsigned ell) {
  if (ell == 0) throw std::invalid_argument("ell must be >= 1");
  Factorization fact = factorize(g.value());
  PairCount out;
  out.modulus = pow_or_throw(g.value(), ell, "g^ell does not fit in 64 bits");
  out.method = PairCountMethod::upper_bound;
  out.count = 1;
  for (const PrimePower& pp : fact.factors) {
    unsigned exponent = pp.e * ell;
    PairCount bound = square_pairs_bound(pp.p, exponent);
    out.count = mul_or_throw(out.count, bound.count, "CRT bound overflow");
  }
  return out;
}

BadSetReport bad_set_hits(const SplitParams& params, const Rational& eps,
                          unsigned k, const Executor& ex) {
  if (params.ell == 0)
    throw std::invalid_argument("bad-set census undefined at ell = 0");
  auto modulus_checked = checked_pow(params.g.value(), params.ell);
  if (!modulus_checked || *modulus_checked > 10'000'000)
    throw std::invalid_argument("bad-set enumeration is guarded at g^ell <= 10^7");
  const u64 modulus = *modulus_checked;
  const unsigned ell = params.ell;
  const unsigned gv = params.g.value();

  // Enumerate B: which residues, written as exactly ell digits, fail the
  // (eps,k) condition. Chunks write disjoint slices.
  std::vector<std::uint8_t> bad(modulus, 0);
  auto mark = [&](u64 lo, u64 hi) {
    NormalityTester tester(params.g, k, eps);
    std::vector<std::uint8_t> s(ell);
    u64 v = lo;
    for (std::size_t i = ell; i-- > 0;) {
      s[i] = static_cast<std::uint8_t>(v % gv);
      v /= gv;
    }
    u64 marked = 0;
    for (u64 value = lo; value < hi; ++value) {
      if (!tester.test(s)) {
        bad[value] = 1;
        ++marked;
      }
      for (std::size_t i = ell; i-- > 0;) {
        if (++s[i] < gv) break;
        s[i] = 0;
      }
    }
    return marked;
  };
  BadSetReport report;
  for (u64 marked : ex.run_chunks<u64>(0, modulus, mark))
    report.bad_set_size += marked;

  auto count_hits = [&](u64 lo, u64 hi) {
    u64 hits = 0;
    for (u64 n = lo; n < hi; ++n)
      if (bad[n * n % modulus]) ++hits;
    return hits;
  };
  for (u64 hits : ex.run_chunks<u64>(params.m_prime, params.m + 1, count_hits))
    report.hits += hits;

  report.pair_count = square_pairs_brute(modulus, ex).count;
  report.cs_bound = static_cast<double>(params.g.value()) *
                    std::sqrt(static_cast<double>(report.bad_set_size)) *
                    std::sqrt(static_cast<double>(report.pair_count));
  if (static_cast<double>(report.hits) > report.cs_bound)
    throw invariant_violation(
        "bad-set hits exceeded the Cauchy-Schwarz ceiling");
  return report;
}

}  // namespace normlab
