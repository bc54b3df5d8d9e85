#pragma once

#include "normlab/digits.hpp"
#include "normlab/executor.hpp"
#include "normlab/rational.hpp"

namespace normlab {

/// Parameters of the half-split of the squares' digit strings: cut each
/// f(n) = n^2 after its leading digits so that the tail has exactly
/// ell = floor(L(m^2)/2) digits, and restrict attention to n in [m', m]
/// with m' = floor(m^(1 - delta/2)). delta is caller-supplied (the
/// underlying exponent is existential, so there is nothing to compute it
/// from); both m' and the gap threshold derive from it by exact integer
/// root extraction, never floating point.
struct SplitParams {
  u64 m = 0;
  Base g{10};
  unsigned ell = 0;   // floor(L(m^2, g) / 2); 0 only in degenerate tiny-m cases
  Rational delta;
  u64 m_prime = 0;    // floor(m^(1 - delta/2))
};

SplitParams make_params(u64 m, Base g, const Rational& delta);

/// floor((base^num)^(1/den)) and the matching ceiling, exactly.
u64 floor_root_pow(u64 base, u64 num, u64 den);
u64 ceil_root_pow(u64 base, u64 num, u64 den);

/// ceil(m^(3 delta / 4)): minimum index gap that forces distinct b values.
u64 gap_threshold(u64 m, const Rational& delta);

/// One split: n^2 = b * g^ell + c, with the tail c materialized as exactly
/// ell digits (leading zeros kept) and the head b left canonical. The
/// division and concatenation identities are verified at construction.
struct SplitPair {
  u64 n = 0;
  u64 b = 0;
  u64 c = 0;
  DigitString c_string{Base(10)};
};

SplitPair split(u64 n, const SplitParams& params);

/// Max over all length-k patterns of |nu(f,s) - nu(b,s) - nu(c,s)| for the
/// split of n; a window not inside either half must straddle the single
/// boundary, so the max can never exceed k-1 (checked).
struct BoundaryCheck {
  u64 max_discrepancy = 0;
  u64 bound = 0;  // k - 1
};

BoundaryCheck boundary_inequality_check(u64 n, const SplitParams& params, unsigned k);

/// Scan of b(n) = floor(n^2 / g^ell) over n in [m', m]. b is non-decreasing,
/// so equal values form runs; a pair n1 < n2 with b(n1) = b(n2) despite
/// n2 - n1 >= gap_threshold counts as a violation of the expected gap
/// property (reported, not asserted — it only provably holds for large m).
struct GapCensus {
  u64 m_prime = 0;
  u64 m = 0;
  u64 gap_threshold = 0;
  u64 min_gap_violations = 0;
  u64 max_multiplicity = 0;          // longest run of equal b values
  bool multiplicity_within_threshold = false;
};

GapCensus b_gap_census(const SplitParams& params, const Executor& ex = Executor(1));

/// Census over n in [m', m] of the half-normality failures: heads b not
/// (eps,k)-normal, padded tails c not (eps,k)-normal, full strings f not
/// (2 eps,k)-normal, and the containment check — an f-failure with both
/// halves fine is impossible when k <= eps * L(n^2) (that proviso mirrors
/// the argument's k = O(eps L) requirement with constant 1). n whose split
/// is undefined (L(n^2) <= ell) or that fail the proviso are counted
/// separately, never silently dropped.
struct HalfCensus {
  u64 total = 0;  // size of [m', m]
  u64 b_bad = 0;
  u64 c_bad = 0;
  u64 f_bad_2eps = 0;
  u64 containment_violations = 0;
  u64 proviso_failures = 0;
  u64 split_undefined = 0;
};

HalfCensus half_census(const SplitParams& params, const Rational& eps, unsigned k,
                       const Executor& ex = Executor(1));

}  // namespace normlab
