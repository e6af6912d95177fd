#pragma once

// The pretentious-distance engine: D(g_ell, n^{i alpha}; x)^2 partial sums,
// alpha scans for pretending witnesses, the mean-value exception check and
// the Benford verdict.

#include <functional>
#include <string>
#include <vector>

#include "benford/mf_spec.hpp"

namespace benford {

// Per-prime data for one spec, shared by every curve/scan over the same
// prime range: weights 1/p, ln p, t_p = log10|h(p)| and the zero flags.
// Built once per run; logs are not cached beyond it.
struct PrimeProfile {
  std::vector<u64> primes;
  std::vector<double> inv_p;
  std::vector<double> ln_p;
  std::vector<double> t;  // valid where !zero
  std::vector<unsigned char> zero;

  static PrimeProfile build(const FunctionSpec& spec, const SpfSieve& sieve,
                            u64 prime_limit, const TauContext* ctx = nullptr);
};

// dsq[j] = sum_{p <= checkpoints[j]} (1 - Re(g_ell(p) p^{-i alpha})) / p,
// with the p-term equal to 1/p where h(p) = 0. Every term is >= 0 and the
// accumulation is plain (monotone), so dsq is non-decreasing by
// construction.
struct DistanceCurve {
  int ell = 0;
  double alpha = 0;
  std::vector<double> checkpoints;
  std::vector<double> dsq;
};

DistanceCurve distance_sq_curve(const FunctionSpec& spec,
                                const SpfSieve& sieve, int ell, double alpha,
                                const std::vector<double>& checkpoints,
                                const TauContext* ctx = nullptr);
DistanceCurve distance_sq_curve(const PrimeProfile& profile, int ell,
                                double alpha,
                                const std::vector<double>& checkpoints);

// Fitted slope of dsq against ln ln x over the top half of the checkpoints;
// the finite-x stand-in for "D = infinity" (divergent cases keep the slope
// bounded away from 0, pretending cases drive it to 0).
double curve_slope(const DistanceCurve& curve);

struct ScanParams {
  double alpha_lo = -40.0;
  double alpha_hi = 40.0;
  int steps = 4001;  // grid points, endpoints included
  std::vector<double> checkpoints;  // empty: geometric grid to the limit
  double slope_threshold = 0.05;
};

struct ScanPoint {
  double alpha = 0;
  double final_dsq = 0;
  double slope = 0;
};

struct AlphaScanResult {
  int ell = 0;
  ScanParams params;
  std::vector<ScanPoint> grid;
  // Golden-section refinement (to grid-step/100) of the slope-minimizing
  // grid point; the slope is the pretending criterion, so it is what the
  // refinement minimizes.
  ScanPoint refined;
};

AlphaScanResult alpha_scan(const FunctionSpec& spec, const SpfSieve& sieve,
                           int ell, const ScanParams& params,
                           const TauContext* ctx = nullptr);
AlphaScanResult alpha_scan(const PrimeProfile& profile, int ell,
                           const ScanParams& params);

// True iff g_ell(2^k) is within 1e-9 of -2^{i k alpha} for every k <= kmax
// (the one family where a pretending function still has mean value zero).
using prime_power_fn = std::function<PrimePowerValue(u64, int)>;
bool halasz_exception_check(const prime_power_fn& h_at, int ell, double alpha,
                            int kmax);
bool halasz_exception_check(const FunctionSpec& spec, int ell, double alpha,
                            int kmax, const TauContext* ctx = nullptr);

struct Witness {
  int ell = 0;
  double alpha = 0;
  double final_dsq = 0;
  double slope = 0;
};

struct Verdict {
  bool benford_evidence = false;  // true iff witnesses is empty
  std::vector<Witness> witnesses;
  int ell_max = 0;
  ScanParams scan_params;
  u64 hypothesis_N = 0;
  u64 hypothesis_T = 0;
  double hypothesis_NoverT = 1.0;  // max x/T_x over table checkpoints
  std::string note;                // stated finite-scan limitation
  std::vector<AlphaScanResult> scans;  // one per scanned ell, for reports
};

// Scans ell = 1..ell_max (negative ell are exact mirrors for real h:
// g_{-ell} = conj(g_ell), so the curve at (-ell,-alpha) equals the one at
// (ell,alpha)); records a witness where the minimal slope falls below the
// threshold and the exception check fails. Never a proof: the verdict is
// finite-x evidence and says so.
Verdict classify(const FunctionSpec& spec, const SpfSieve& sieve, int ell_max,
                 const ScanParams& params, const TauContext* ctx = nullptr);

}  // namespace benford
