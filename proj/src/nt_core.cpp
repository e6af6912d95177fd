#include "benford/nt_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace benford {

SpfSieve::SpfSieve(u64 limit) : limit_(limit) {
  if (limit < 2) throw std::invalid_argument("SpfSieve: limit must be >= 2");
  if (limit > kMaxLimit)
    throw capacity_error("SpfSieve: limit " + std::to_string(limit) +
                         " exceeds memory bound " + std::to_string(kMaxLimit));
  spf_.assign(limit + 1, 0);
  primes_.reserve(limit > 100 ? std::size_t(double(limit) / std::log(double(limit)) * 1.2)
                              : 32);
  // Linear sieve: each composite is struck exactly once, by its smallest
  // prime factor.
  for (u64 n = 2; n <= limit; ++n) {
    if (spf_[n] == 0) {
      spf_[n] = u32(n);
      primes_.push_back(n);
    }
    for (u64 p : primes_) {
      if (p > spf_[n] || n * p > limit) break;
      spf_[n * p] = u32(p);
    }
  }
}

SpfSieve build_spf(u64 limit) { return SpfSieve(limit); }

std::size_t SpfSieve::prime_count_upto(u64 x) const {
  auto it = std::upper_bound(primes_.begin(), primes_.end(), x);
  return std::size_t(it - primes_.begin());
}

std::vector<std::pair<u64, int>> factorize(const SpfSieve& sieve, u64 n) {
  if (n < 2 || n > sieve.limit())
    throw std::out_of_range("factorize: n out of sieve range");
  std::vector<std::pair<u64, int>> out;
  while (n > 1) {
    u64 p = sieve.spf(n);
    int a = 0;
    do {
      n /= p;
      ++a;
    } while (n > 1 && sieve.spf(n) == p);
    out.emplace_back(p, a);
  }
  return out;
}

namespace {

void validate_checkpoints(const SpfSieve& sieve,
                          const std::vector<double>& cps) {
  if (cps.empty()) throw std::invalid_argument("checkpoints empty");
  double prev = 0;
  for (double x : cps) {
    if (x < 2.0) throw std::invalid_argument("checkpoint < 2");
    if (x <= prev) throw std::invalid_argument("checkpoints not increasing");
    if (x > double(sieve.limit()))
      throw std::out_of_range("checkpoint exceeds sieve limit");
    prev = x;
  }
}

}  // namespace

// Both prime sums share one accumulation loop: primes in increasing order,
// Kahan compensation, snapshot at each checkpoint. Fixed evaluation order
// keeps results bit-reproducible run to run.
PrimeSumSeries prime_complex_sum(const SpfSieve& sieve, double alpha,
                                 const std::vector<double>& cps) {
  validate_checkpoints(sieve, cps);
  PrimeSumSeries out;
  out.checkpoints = cps;
  out.values.reserve(cps.size());

  const auto& primes = sieve.primes();
  kahan_csum acc;
  std::size_t i = 0;
  for (double x : cps) {
    while (i < primes.size() && double(primes[i]) <= x) {
      double p  = double(primes[i]);
      double w  = 1.0 / p;
      if (alpha == 0.0) {
        acc.re.add(w);
      } else {
        double ph = -alpha * std::log(p);
        acc.add(cplx(w * std::cos(ph), w * std::sin(ph)));
      }
      ++i;
    }
    out.values.push_back(acc.value());
  }
  return out;
}

PrimeSumSeries mertens_reciprocal_sum(const SpfSieve& sieve,
                                      const std::vector<double>& cps) {
  return prime_complex_sum(sieve, 0.0, cps);
}

}  // namespace benford
