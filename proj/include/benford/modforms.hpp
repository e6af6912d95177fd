#pragma once

// Exact Ramanujan tau, Sato-Tate angles and statistics, and the semicircle
// integral constant behind the tau distance slopes.

#include <vector>

#include "benford/common.hpp"
#include "benford/mf_spec.hpp"
#include "benford/nt_core.hpp"

namespace benford {

// Exact tau(1..limit) as signed 128-bit integers, built from
// Delta = q * J^8 with J = prod (1-q^n)^3 = sum (-1)^k (2k+1) q^{k(k+1)/2}
// (Jacobi), the eighth power via exact integer squarings.
//
// |tau(n)| <= d(n) n^{11/2}; past limit ~2e6 that bound approaches the
// signed 128-bit range, so larger tables are rejected with a capacity
// error (reconstruction additionally guards each coefficient).
class TauSeries {
 public:
  static constexpr u64 kMaxLimit     = 2'000'000;
  static constexpr u64 kDefaultLimit = 100'000;

  u64 limit() const { return limit_; }
  i128 tau(u64 n) const { return values_[n]; }
  const std::vector<i128>& values() const { return values_; }

  friend TauSeries tau_series(u64 N);

 private:
  u64 limit_ = 0;
  std::vector<i128> values_;  // index n, [0] unused
};

TauSeries tau_series(u64 N);

// Sato-Tate angles: theta_p in [0, pi] with tau(p) = 2 p^{11/2} cos theta_p
// (the bound |tau(p)| <= 2 p^{11/2} makes theta_p well defined).
struct ThetaTable {
  u64 prime_limit = 0;
  std::vector<u64> primes;    // p <= prime_limit, increasing
  std::vector<double> theta;  // aligned with primes

  double theta_of(u64 p) const;  // binary search; throws if absent
};

// prime_limit must not exceed the series limit.
ThetaTable build_theta_table(const TauSeries& series, u64 prime_limit);

// Chebyshev form tau(p^a) = p^{11a/2} sin((a+1) theta_p) / sin(theta_p):
// log10|tau(p^a)| = (11a/2) log10 p + log10|sin((a+1)th)/sin th|.
// a = 0 gives log 0 = tau(1) = 1. Near-vanishing sine is cross-checked
// against the exact series (when p^a is within its limit) before a zero
// flag is issued.
PrimePowerValue tau_prime_power_log(u64 p, int a, double theta_p,
                                    const TauSeries* series = nullptr);

struct SatoTateHistogram {
  int bins = 0;
  u64 total = 0;
  std::vector<double> bin_lo, bin_hi;  // over t = cos theta in [-1, 1]
  std::vector<u64> counts;
  std::vector<double> observed;  // counts / total
  std::vector<double> expected;  // (2/pi) int sqrt(1-t^2) dt over the bin
  double sup_distance = 0.0;     // max_bin |observed - expected|
};

SatoTateHistogram sato_tate_histogram(const ThetaTable& thetas, int bins);

// Zero statistics feeding the N/T_N hypothesis: count of p <= x with
// tau(p) = 0 and of n <= x with tau(n) != 0.
struct ZeroDensityReport {
  std::vector<u64> checkpoints;
  std::vector<u64> zero_prime_counts;
  std::vector<u64> nonzero_counts;
  std::vector<double> n_over_t;
};

ZeroDensityReport serre_zero_density(const TauSeries& series,
                                     const ThetaTable& thetas,
                                     const std::vector<u64>& checkpoints);

// K(beta) = (4/pi) int_0^1 cos(beta ln(2y)) sqrt(1-y^2) dy to absolute
// error 1e-10. Substituting u = ln(2y) turns the oscillatory y->0 end
// into an absolutely convergent e^u tail.
double k_constant(double beta);

// Partial sums over primes with tau(p) != 0 of
//   cos(beta ln(2|cos th_p|)) cos(gamma ln p) / p
// and the sine companion, plus the fitted slope of the cosine sum against
// ln ln x over the top half of checkpoints (the slope tends to K(beta)
// when gamma = 0 and to 0 otherwise).
struct Lemma64Series {
  double beta = 0, gamma = 0;
  std::vector<double> checkpoints;
  std::vector<double> cos_sums, sin_sums;
  double slope = 0;
};

Lemma64Series lemma64_empirical(const ThetaTable& thetas, double beta,
                                double gamma,
                                const std::vector<double>& checkpoints);

}  // namespace benford
