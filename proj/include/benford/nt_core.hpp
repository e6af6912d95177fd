#pragma once

// Prime infrastructure: smallest-prime-factor sieve, factorization and the
// classical prime sums (Mertens reciprocal sum, sum of p^{-1-i*alpha}).

#include <utility>
#include <vector>

#include "benford/common.hpp"

namespace benford {

// Smallest prime factor for every 2 <= n <= limit, 4 bytes per entry.
// Construction is single-threaded; afterwards the sieve is immutable and
// safe to share across threads. Memory bound: limit <= 2e8 (~800 MB);
// callers wanting more need a segmented sieve, which is out of scope.
class SpfSieve {
 public:
  static constexpr u64 kMaxLimit = 200'000'000;

  explicit SpfSieve(u64 limit);

  u64 limit() const { return limit_; }
  u32 spf(u64 n) const { return spf_[n]; }
  bool is_prime(u64 n) const { return n >= 2 && spf_[n] == n; }

  // Primes in increasing order, collected during the linear sieve pass.
  const std::vector<u64>& primes() const { return primes_; }
  // Number of primes <= x.
  std::size_t prime_count_upto(u64 x) const;

 private:
  u64 limit_;
  std::vector<u32> spf_;
  std::vector<u64> primes_;
};

SpfSieve build_spf(u64 limit);

// (prime, exponent) pairs with strictly increasing primes; product
// reconstructs n exactly. Requires 2 <= n <= sieve.limit().
std::vector<std::pair<u64, int>> factorize(const SpfSieve& sieve, u64 n);

// Partial sums of a prime series at increasing real checkpoints.
// values[j] is the exact partial sum over primes p <= checkpoints[j].
struct PrimeSumSeries {
  std::vector<double> checkpoints;
  std::vector<cplx> values;
};

// sum_{p <= x} 1/p at each checkpoint (imaginary parts are zero).
// Checkpoints must be >= 2 and strictly increasing, and <= sieve limit.
PrimeSumSeries mertens_reciprocal_sum(const SpfSieve& sieve,
                                      const std::vector<double>& checkpoints);

// sum_{p <= x} p^{-1-i*alpha}, each term computed as (1/p) e^{-i alpha ln p}.
// alpha = 0 reduces to the reciprocal sum.
PrimeSumSeries prime_complex_sum(const SpfSieve& sieve, double alpha,
                                 const std::vector<double>& checkpoints);

}  // namespace benford
