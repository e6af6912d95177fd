#pragma once

// Digit-string frequencies, Weyl sums and mod-1 uniformity diagnostics.

#include <optional>
#include <string>
#include <vector>

#include "benford/mf_spec.hpp"

namespace benford {

// Benford target density log10(1 + 1/S) for a digit string S with no
// leading zero, read as an integer.
double benford_expected(const std::string& digits);

struct DigitRow {
  u64 value = 0;        // the K-digit string as an integer
  u64 count = 0;        // observed among nonzero terms
  double expected = 0;  // log10(1 + 1/S)
};

struct DigitReport {
  int K = 1;
  u64 N = 0;
  u64 total_nonzero = 0;
  // K <= 6: every K-digit string, in order (counts may be zero).
  // K  > 6: observed strings only (enumerating 9*10^{K-1} rows is not useful).
  std::vector<DigitRow> rows;
};

// Decodes the K-digit leading string of each nonzero n <= N from the
// stored frac as S = floor(10^{K-1+frac}), with the result pinned to the
// half-open convention S <= 10^{K-1+frac} < S+1 via log10 boundary
// comparisons (a raw pow+floor can land one off at representation
// boundaries such as frac = log10 2). K is capped at 15: double-precision
// frac carries no more digits than that.
DigitReport leading_string_counts(const LogTable& table, int K, u64 N);

struct WeylSeries {
  int ell = 0;
  std::vector<u64> checkpoints;          // N values
  std::vector<u64> nonzero_counts;       // T_N at each checkpoint
  std::vector<cplx> sums_full;           // (1/N) sum of g_ell(n)
  std::vector<cplx> sums_nonzero;        // == (N/T_N) * sums_full, exactly
};

// Kahan-accumulated sum of e^{2 pi i ell frac(n)} over nonzero n. Both
// normalizations come from the same accumulation; sums_nonzero is defined
// as (N/T_N)*sums_full so that identity holds bit-exactly.
WeylSeries weyl_sums(const LogTable& table, int ell,
                     const std::vector<u64>& checkpoints);

// Exact star discrepancy of {frac(n) : n <= N, h(n) != 0} via the sorted
// sample formula max_i max(u_(i) - (i-1)/T, i/T - u_(i)).
double star_discrepancy(const LogTable& table, u64 N);
double star_discrepancy_of_sample(std::vector<double> sample);

// Recomputes the digit counts by interval membership
// frac in [log10 S - (K-1), log10(S+1) - (K-1)) over sorted fracs and
// compares with the floor-decode table string by string. K <= 6.
struct CrosscheckReport {
  bool agree = true;
  u64 first_mismatch = 0;  // string value, valid when !agree
  u64 count_decode = 0, count_interval = 0;
};

CrosscheckReport diaconis_crosscheck(const LogTable& table, int K, u64 N);

}  // namespace benford
