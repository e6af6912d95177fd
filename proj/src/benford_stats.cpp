#include "benford/benford_stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace benford {

namespace {

constexpr double kLn10  = 2.302585092994045684;
constexpr double kTwoPi = 6.283185307179586477;

u64 pow10_u64(int e) {
  u64 v = 1;
  for (int i = 0; i < e; ++i) v *= 10;
  return v;
}

// Left interval boundary of string S in frac space:
// frac >= log10(S) - (K-1)  <=>  the K leading digits of 10^frac are S.
// Both decode and cross-check compare against exactly this double, which
// is what pins the two paths to one tie convention.
inline double string_boundary(u64 S, int K) {
  return std::log10(double(S)) - double(K - 1);
}

// floor(10^{K-1+frac}) with the result corrected onto the half-open
// boundary grid above; raw pow can round to either side at values like
// frac = log10 2.
u64 decode_string(double frac, int K) {
  const u64 lo = pow10_u64(K - 1), hi = lo * 10 - 1;
  u64 s = u64(std::pow(10.0, double(K - 1) + frac));
  s     = std::clamp(s, lo, hi);
  while (s > lo && frac < string_boundary(s, K)) --s;
  while (s < hi && frac >= string_boundary(s + 1, K)) ++s;
  return s;
}

}  // namespace

double benford_expected(const std::string& digits) {
  if (digits.empty())
    throw std::invalid_argument("benford_expected: empty string");
  if (digits[0] == '0')
    throw std::invalid_argument("benford_expected: leading zero");
  u64 S = 0;
  for (char c : digits) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("benford_expected: non-digit input");
    S = S * 10 + u64(c - '0');
  }
  return std::log1p(1.0 / double(S)) / kLn10;
}

DigitReport leading_string_counts(const LogTable& table, int K, u64 N) {
  if (K < 1 || K > 15)
    throw std::invalid_argument(
        "leading_string_counts: K must be in 1..15 (double frac carries "
        "no more digits)");
  if (N < 1 || N > table.limit)
    throw std::out_of_range("leading_string_counts: N beyond table");

  DigitReport rep;
  rep.K = K;
  rep.N = N;

  const u64 lo = pow10_u64(K - 1);
  if (K <= 6) {
    const std::size_t span = std::size_t(lo * 9);
    std::vector<u64> counts(span, 0);
#ifdef _OPENMP
#pragma omp parallel
    {
      std::vector<u64> local(span, 0);
#pragma omp for schedule(static) nowait
      for (i64 n = 1; n <= i64(N); ++n) {
        if (table.is_zero(u64(n))) continue;
        ++local[std::size_t(decode_string(table.frac[n], K) - lo)];
      }
#pragma omp critical
      for (std::size_t i = 0; i < span; ++i) counts[i] += local[i];
    }
#else
    for (u64 n = 1; n <= N; ++n) {
      if (table.is_zero(n)) continue;
      ++counts[std::size_t(decode_string(table.frac[n], K) - lo)];
    }
#endif
    rep.rows.reserve(span);
    for (std::size_t i = 0; i < span; ++i) {
      u64 S = lo + i;
      rep.rows.push_back({S, counts[i], benford_expected(std::to_string(S))});
      rep.total_nonzero += counts[i];
    }
  } else {
    std::map<u64, u64> counts;
    for (u64 n = 1; n <= N; ++n) {
      if (table.is_zero(n)) continue;
      ++counts[decode_string(table.frac[n], K)];
    }
    for (auto& [S, c] : counts) {
      rep.rows.push_back({S, c, benford_expected(std::to_string(S))});
      rep.total_nonzero += c;
    }
  }
  return rep;
}

WeylSeries weyl_sums(const LogTable& table, int ell,
                     const std::vector<u64>& checkpoints) {
  if (ell == 0) throw std::invalid_argument("weyl_sums: ell must be nonzero");
  if (checkpoints.empty())
    throw std::invalid_argument("weyl_sums: no checkpoints");
  u64 prev = 0;
  for (u64 x : checkpoints) {
    if (x <= prev || x > table.limit)
      throw std::out_of_range("weyl_sums: bad checkpoint sequence");
    prev = x;
  }

  WeylSeries out;
  out.ell         = ell;
  out.checkpoints = checkpoints;

  // Fixed 2^16-aligned blocks; per-block compensated partials are combined
  // in block order, so the result is independent of the thread count.
  constexpr u64 kBlock = 1 << 16;
  const double two_pi_ell = kTwoPi * ell;

  kahan_csum acc;
  u64 done          = 0;
  u64 nonzero_total = 0;
  for (u64 x : checkpoints) {
    const u64 first_block = done / kBlock;
    const u64 last_block  = x / kBlock;
    const i64 nblocks     = i64(last_block - first_block + 1);
    std::vector<cplx> partial(std::size_t(nblocks), cplx(0, 0));
    std::vector<u64> nz(std::size_t(nblocks), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (i64 b = 0; b < nblocks; ++b) {
      u64 blo = (first_block + u64(b)) * kBlock;
      u64 bhi = blo + kBlock - 1;
      blo     = std::max(blo, done + 1);
      bhi     = std::min(bhi, x);
      kahan_csum local;
      u64 cnt = 0;
      for (u64 n = blo; n <= bhi; ++n) {
        if (table.is_zero(n)) continue;
        double ph = two_pi_ell * table.frac[n];
        local.add(cplx(std::cos(ph), std::sin(ph)));
        ++cnt;
      }
      partial[std::size_t(b)] = local.value();
      nz[std::size_t(b)]      = cnt;
    }
    for (i64 b = 0; b < nblocks; ++b) {
      acc.add(partial[std::size_t(b)]);
      nonzero_total += nz[std::size_t(b)];
    }
    done = x;

    cplx S    = acc.value();
    cplx full = S / double(x);
    out.nonzero_counts.push_back(nonzero_total);
    out.sums_full.push_back(full);
    out.sums_nonzero.push_back(full *
                               (double(x) / double(nonzero_total)));
  }
  return out;
}

double star_discrepancy_of_sample(std::vector<double> u) {
  if (u.empty()) throw std::invalid_argument("star_discrepancy: empty sample");
  std::sort(u.begin(), u.end());
  const double T = double(u.size());
  double d       = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max(d, u[i] - double(i) / T);
    d = std::max(d, double(i + 1) / T - u[i]);
  }
  return d;
}

double star_discrepancy(const LogTable& table, u64 N) {
  if (N < 1 || N > table.limit)
    throw std::out_of_range("star_discrepancy: N beyond table");
  std::vector<double> u;
  u.reserve(N);
  for (u64 n = 1; n <= N; ++n)
    if (!table.is_zero(n)) u.push_back(table.frac[n]);
  return star_discrepancy_of_sample(std::move(u));
}

CrosscheckReport diaconis_crosscheck(const LogTable& table, int K, u64 N) {
  if (K < 1 || K > 6)
    throw std::invalid_argument(
        "diaconis_crosscheck: K capped at 6 (string enumeration)");
  DigitReport by_decode = leading_string_counts(table, K, N);

  // Second route: sort the fracs once and difference cumulative counts at
  // the interval boundaries log10(S) - (K-1).
  std::vector<double> u;
  u.reserve(N);
  for (u64 n = 1; n <= N; ++n)
    if (!table.is_zero(n)) u.push_back(table.frac[n]);
  std::sort(u.begin(), u.end());

  const u64 lo = pow10_u64(K - 1);
  CrosscheckReport rep;
  std::size_t prev_idx = 0;  // count of frac < boundary(lo) == 0 boundary
  for (u64 S = lo; S < lo * 10; ++S) {
    double b_hi = S + 1 == lo * 10 ? 1.0 : string_boundary(S + 1, K);
    std::size_t idx =
        std::size_t(std::lower_bound(u.begin(), u.end(), b_hi) - u.begin());
    u64 interval_count = idx - prev_idx;
    prev_idx           = idx;
    u64 decode_count   = by_decode.rows[std::size_t(S - lo)].count;
    if (interval_count != decode_count && rep.agree) {
      rep.agree          = false;
      rep.first_mismatch = S;
      rep.count_decode   = decode_count;
      rep.count_interval = interval_count;
    }
  }
  return rep;
}

}  // namespace benford
