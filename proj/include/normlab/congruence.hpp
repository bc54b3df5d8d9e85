#pragma once

#include <vector>

#include "normlab/digits.hpp"
#include "normlab/executor.hpp"
#include "normlab/rational.hpp"
#include "normlab/split.hpp"

namespace normlab {

struct PrimePower {
  u64 p = 0;
  unsigned e = 0;
};

struct Factorization {
  u64 value = 0;
  std::vector<PrimePower> factors;  // distinct primes, increasing
};

/// Complete factorization by trial division (intended for small moduli).
Factorization factorize(u64 v);

enum class PairCountMethod { exact_formula, upper_bound, brute_force };
const char* pair_count_method_name(PairCountMethod method);

/// Number of pairs (x, y) in a complete residue system mod `modulus` with
/// x^2 == y^2, or an upper bound for it, depending on method. (The count is
/// the same whether residues run 0..M-1 or 1..M.)
struct PairCount {
  u64 modulus = 0;
  u64 count = 0;
  PairCountMethod method = PairCountMethod::brute_force;
};

/// Exact count for an odd prime power p^e via the closed form
/// 2 p^e (1 - 1/p) ceil(e/2) + p^(2 floor(e/2)). Rejects p = 2, where the
/// closed form does not apply (extra square roots of unity).
PairCount square_pairs_exact_odd(u64 p, unsigned e);

/// The headline bound: 2e p^e for odd p, 4e p^e for p = 2.
PairCount square_pairs_bound(u64 p, unsigned e);

/// The sharper bound appearing inside the derivation: each square has at
/// most 2 (odd p) or 4 (p = 2) square roots per relevant level, giving
/// 2or4 * p^e (1 - 1/p) ceil(e/2) + p^(2 floor(e/2)). For odd p this equals
/// the exact count.
PairCount square_pairs_intermediate(u64 p, unsigned e);

/// Exact count by a single O(M) histogram pass: r(b) = #square roots of b,
/// count = sum of r(b)^2 (the second-moment identity). Guarded at M <= 10^7.
PairCount square_pairs_brute(u64 modulus, const Executor& ex = Executor(1));

/// Combined bound for M = g^ell via the prime factorization of g and the
/// per-prime-power bounds: (2 if 2|g) * prod(2 e_i ell) * g^ell.
PairCount crt_pair_bound(Base g, unsigned ell);

/// How often the tail c(n) = n^2 mod g^ell lands in the bad set B of
/// non-(eps,k)-normal length-ell strings, for n in [m', m], versus the
/// Cauchy-Schwarz ceiling g * sqrt(#B * sum r(b)^2). hits <= cs_bound is
/// checked (it follows from counting roots per residue class).
struct BadSetReport {
  u64 bad_set_size = 0;
  u64 hits = 0;
  u64 pair_count = 0;  // square_pairs_brute(g^ell)
  double cs_bound = 0.0;
};

BadSetReport bad_set_hits(const SplitParams& params, const Rational& eps,
                          unsigned k, const Executor& ex = Executor(1));

}  // namespace normlab
