#include "benford/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace benford::ref {

std::vector<bool> sieve_eratosthenes(u64 limit) {
  std::vector<bool> is_prime(limit + 1, true);
  is_prime[0] = false;
  if (limit >= 1) is_prime[1] = false;
  for (u64 i = 2; i * i <= limit; ++i)
    if (is_prime[i])
      for (u64 j = i * i; j <= limit; j += i) is_prime[j] = false;
  return is_prime;
}

u64 prime_count(u64 limit) {
  auto s  = sieve_eratosthenes(limit);
  u64 cnt = 0;
  for (u64 n = 2; n <= limit; ++n) cnt += s[n];
  return cnt;
}

LogTable build_log_table(const FunctionSpec& spec, const SpfSieve& sieve,
                         u64 N, const TauContext* ctx) {
  if (N < 1 || N > sieve.limit())
    throw std::out_of_range("ref::build_log_table: N beyond sieve");
  LogTable t;
  t.limit = N;
  t.frac.assign(N + 1, 0.0);
  t.zero_words.assign((N >> 6) + 1, 0);
  for (u64 n = 2; n <= N; ++n) {
    double sum = 0.0;
    bool zero  = false;
    for (auto [p, a] : factorize(sieve, n)) {
      PrimePowerValue v = eval_prime_power(spec, p, a, ctx);
      if (v.is_zero) {
        zero = true;
        break;
      }
      sum += v.log10_abs;
    }
    if (zero) {
      t.zero_words[n >> 6] |= 1ull << (n & 63);
    } else {
      double f = sum - std::floor(sum);
      if (f >= 1.0) f -= 1.0;
      if (f < 0.0) f = 0.0;
      t.frac[n] = f;
    }
  }
  for (double x : geometric_checkpoints(double(N))) {
    u64 xi = std::min(N, u64(x));
    t.nonzero_counts.emplace_back(xi, t.count_nonzero_upto(xi));
  }
  t.total_nonzero = t.nonzero_counts.back().second;
  return t;
}

WeylSeries weyl_sums(const LogTable& table, int ell,
                     const std::vector<u64>& checkpoints) {
  if (ell == 0) throw std::invalid_argument("ref::weyl_sums: ell != 0");
  WeylSeries out;
  out.ell         = ell;
  out.checkpoints = checkpoints;
  const double tpl = 6.283185307179586477 * ell;
  kahan_csum acc;
  u64 nonzero = 0;
  u64 n       = 1;
  for (u64 x : checkpoints) {
    for (; n <= x; ++n) {
      if (table.is_zero(n)) continue;
      double ph = tpl * table.frac[n];
      acc.add(cplx(std::cos(ph), std::sin(ph)));
      ++nonzero;
    }
    cplx full = acc.value() / double(x);
    out.nonzero_counts.push_back(nonzero);
    out.sums_full.push_back(full);
    out.sums_nonzero.push_back(full * (double(x) / double(nonzero)));
  }
  return out;
}

AlphaScanResult alpha_scan(const PrimeProfile& prof, int ell,
                           const ScanParams& params) {
  if (params.checkpoints.empty())
    throw std::invalid_argument("ref::alpha_scan: checkpoints required");
  AlphaScanResult res;
  res.ell    = ell;
  res.params = params;
  const double step =
      (params.alpha_hi - params.alpha_lo) / double(params.steps - 1);
  res.grid.resize(std::size_t(params.steps));
  for (int j = 0; j < params.steps; ++j) {
    double a        = params.alpha_lo + j * step;
    DistanceCurve c = distance_sq_curve(prof, ell, a, params.checkpoints);
    res.grid[std::size_t(j)] = {a, c.dsq.back(), curve_slope(c)};
  }
  std::size_t jmin = 0;
  for (std::size_t j = 1; j < res.grid.size(); ++j)
    if (res.grid[j].slope < res.grid[jmin].slope) jmin = j;
  res.refined = res.grid[jmin];
  return res;
}

std::vector<i128> square_schoolbook(const std::vector<i128>& a,
                                    std::size_t out_len) {
  std::vector<i128> out(out_len, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (2 * i < out_len) out[2 * i] += a[i] * a[i];
    for (std::size_t j = i + 1; j < a.size() && i + j < out_len; ++j)
      if (a[j] != 0) out[i + j] += 2 * a[i] * a[j];
  }
  return out;
}

std::vector<i128> tau_eta24_direct(u64 N) {
  // q * prod_{n<=N}(1-q^n)^24 truncated past q^N, multiplied out factor by
  // factor: 24 in-place (1-q^n) passes per n. Slow and obvious on purpose.
  std::vector<i128> P(N, 0);  // coefficients of prod, degrees 0..N-1
  P[0] = 1;
  for (u64 n = 1; n < N; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (u64 j = N - 1; j >= n; --j) P[j] -= P[j - n];
  std::vector<i128> tau(N + 1, 0);
  for (u64 m = 1; m <= N; ++m) tau[m] = P[m - 1];
  return tau;
}

}  // namespace benford::ref
