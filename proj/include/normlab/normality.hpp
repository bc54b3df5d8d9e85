#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "normlab/counting.hpp"
#include "normlab/digits.hpp"
#include "normlab/executor.hpp"
#include "normlab/rational.hpp"
#include "normlab/sequences.hpp"

namespace normlab {

/// Reusable exact decider for the (eps,k) digit-frequency condition:
/// every one of the g^k patterns sigma must satisfy
///   |nu(s,sigma)/L(s) - g^-k| <= eps,
/// decided as |nu * g^k - L| * eps_den <= eps_num * L * g^k in integer
/// arithmetic — no floating point anywhere in the accept/reject path.
/// Absent patterns count (nu = 0), so strings with L < k pass only when
/// g^-k <= eps. The frequency denominator is L, not the window count L-k+1.
class NormalityTester {
public:
  NormalityTester(Base g, unsigned k, Rational eps);

  Base base() const noexcept { return g_; }
  unsigned k() const noexcept { return k_; }
  const Rational& eps() const noexcept { return eps_; }

  bool test(std::span<const std::uint8_t> digits);
  bool test(const DigitString& s);

private:
  Base g_;
  unsigned k_;
  Rational eps_;
  u64 gk_;
  bool dense_;
  bool absent_ok_;                    // g^-k <= eps, precomputed
  std::vector<std::uint32_t> counts_;  // dense path
  std::vector<u64> touched_;
  std::unordered_map<u64, std::uint32_t> sparse_;

  bool within_eps(u64 occurrences, u64 length) const;
};

/// One-shot wrapper around NormalityTester.
bool is_eps_k_normal(const DigitString& s, const Rational& eps, unsigned k);

/// How many members of a population of digit strings fail the (eps,k)
/// condition, with the empirical exponent delta_hat =
/// 1 - ln(max(bad,1))/ln(total) as a reporting convention (bad = 0 maps to
/// delta_hat = 1; a population of 1 reports 0).
struct CensusReport {
  std::string kind;       // "integers" or "strings"
  u64 lo = 1, hi = 0;     // integer interval, kind == "integers"
  unsigned length = 0;    // string length, kind == "strings"
  unsigned g = 0;
  unsigned k = 0;
  Rational eps;
  u64 total = 0;          // population size (sampled mode: sample size)
  u64 bad_count = 0;
  double delta_hat = 0.0;
  bool sampled = false;
  u64 sample_size = 0;
  u64 seed = 0;
  double population = 0.0;  // sampled mode: true population g^length

  Rational bad_fraction() const { return Rational(bad_count, total); }
};

/// Scans the integers 1..m in base g.
CensusReport integer_census(u64 m, const Rational& eps, unsigned k, Base g,
                            const Executor& ex = Executor(1));

/// Scans all g^ell strings of length ell, leading zeros included.
/// Requires g^ell <= 10^7; beyond that use the sampled variant.
CensusReport string_census_exact(unsigned ell, const Rational& eps, unsigned k,
                                 Base g, const Executor& ex = Executor(1));

/// Uniform sample of length-ell strings from a seeded deterministic
/// generator; bad_count/total estimates the population bad fraction.
CensusReport string_census_sampled(unsigned ell, const Rational& eps, unsigned k,
                                   Base g, u64 sample_size, u64 seed,
                                   const Executor& ex = Executor(1));

/// Empirical pattern frequency of the concatenation constant at a list of
/// strictly increasing prefix lengths, from one streaming pass.
struct TrajectoryPoint {
  u64 prefix_length = 0;
  u64 count = 0;
  Rational frequency;
};

std::vector<TrajectoryPoint> normality_trajectory(SequenceSpec spec, Base g,
                                                  const Pattern& sigma,
                                                  std::span<const u64> checkpoints);

}  // namespace normlab
