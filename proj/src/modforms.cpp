#include "benford/modforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "benford/ntt.hpp"

namespace benford {

// ---------------------------------------------------------------------
// tau series: Delta = q * J^8, J = sum (-1)^k (2k+1) q^{k(k+1)/2}
// ---------------------------------------------------------------------

TauSeries tau_series(u64 N) {
  if (N < 1) throw std::invalid_argument("tau_series: N >= 1 required");
  if (N > TauSeries::kMaxLimit)
    throw capacity_error("tau_series: N " + std::to_string(N) +
                         " beyond the exact 128-bit bound " +
                         std::to_string(TauSeries::kMaxLimit));

  // J truncated at degree < N: ~sqrt(2N) nonzero terms.
  std::vector<std::pair<u64, i64>> J;
  for (u64 k = 0;; ++k) {
    u64 d = k * (k + 1) / 2;
    if (d >= N) break;
    J.emplace_back(d, (k & 1) ? -i64(2 * k + 1) : i64(2 * k + 1));
  }

  // First squaring directly on the sparse form; coefficients of J^2 stay
  // far below 64 bits.
  std::vector<i128> J2(N, 0);
  for (std::size_t i = 0; i < J.size(); ++i) {
    u64 di = J[i].first;
    if (2 * di < N) J2[2 * di] += i128(J[i].second) * J[i].second;
    for (std::size_t j = i + 1; j < J.size(); ++j) {
      u64 d = di + J[j].first;
      if (d >= N) break;
      J2[d] += 2 * i128(J[i].second) * J[j].second;
    }
  }

  std::vector<i128> J4 = ntt::square_exact(J2, N);
  std::vector<i128> J8 = ntt::square_exact(J4, N);

  TauSeries t;
  t.limit_ = N;
  t.values_.assign(N + 1, 0);
  for (u64 n = 1; n <= N; ++n) t.values_[n] = J8[n - 1];
  if (t.values_[1] != 1)
    throw std::logic_error("tau_series: tau(1) != 1, squaring pipeline broken");
  return t;
}

// ---------------------------------------------------------------------
// Sato-Tate angles
// ---------------------------------------------------------------------

ThetaTable build_theta_table(const TauSeries& series, u64 prime_limit) {
  if (prime_limit < 2 || prime_limit > series.limit())
    throw std::out_of_range(
        "build_theta_table: prime_limit outside the tau series range");

  ThetaTable t;
  t.prime_limit = prime_limit;
  // Odd-only trial marking is wasteful; reuse a small Eratosthenes pass.
  std::vector<bool> comp(prime_limit + 1, false);
  for (u64 i = 2; i * i <= prime_limit; ++i)
    if (!comp[i])
      for (u64 j = i * i; j <= prime_limit; j += i) comp[j] = true;
  for (u64 p = 2; p <= prime_limit; ++p)
    if (!comp[p]) t.primes.push_back(p);

  t.theta.resize(t.primes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (i64 i = 0; i < i64(t.primes.size()); ++i) {
    u64 p             = t.primes[i];
    long double ratio = i128_to_ld(series.tau(p)) /
                        (2.0L * std::pow((long double)p, 5.5L));
    double r = (double)std::clamp(ratio, -1.0L, 1.0L);
    t.theta[i] = std::acos(r);
  }
  return t;
}

double ThetaTable::theta_of(u64 p) const {
  auto it = std::lower_bound(primes.begin(), primes.end(), p);
  if (it == primes.end() || *it != p)
    throw std::out_of_range("theta_of: p not a prime within the table");
  return theta[std::size_t(it - primes.begin())];
}

// ---------------------------------------------------------------------
// Chebyshev form of tau at prime powers
// ---------------------------------------------------------------------

namespace {

// Exact log10|tau(p^a)| from the series when p^a is within its limit.
// first = in-range flag, second = the value (is_zero encoded there).
std::pair<bool, PrimePowerValue> exact_tau_log(const TauSeries* series, u64 p,
                                               int a) {
  if (series == nullptr) return {false, {}};
  u64 pa = 1;
  for (int i = 0; i < a; ++i) {
    if (pa > series->limit() / p) return {false, {}};
    pa *= p;
  }
  i128 v = series->tau(pa);
  if (v == 0) return {true, {0.0, true}};
  long double mag = i128_to_ld(v);
  return {true, {double(std::log10(std::fabs(mag))), false}};
}

}  // namespace

PrimePowerValue tau_prime_power_log(u64 p, int a, double theta_p,
                                    const TauSeries* series) {
  if (a < 0) throw std::invalid_argument("tau_prime_power_log: a >= 0");
  if (a == 0) return {0.0, false};  // tau(1) = 1
  if (!(theta_p >= 0.0 && theta_p <= 3.14159265358979324))
    throw std::invalid_argument("tau_prime_power_log: theta outside [0, pi]");

  double s1   = std::sin(theta_p);
  double sa   = std::sin((a + 1) * theta_p);
  double base = 5.5 * a * std::log10(double(p));

  if (s1 == 0.0) {
    // theta exactly 0 or pi cannot come from an integer tau(p). Degenerate
    // inputs use the exact series when possible, else U_a(+-1) = +-(a+1).
    auto [ok, v] = exact_tau_log(series, p, a);
    if (ok) return v;
    return {base + std::log10(double(a + 1)), false};
  }

  if (std::fabs(sa) < 1e-12) {
    // Candidate zero; the exact series decides when it can.
    auto [ok, v] = exact_tau_log(series, p, a);
    if (ok) return v;
    return {0.0, true};
  }

  return {base + std::log10(std::fabs(sa / s1)), false};
}

// ---------------------------------------------------------------------
// Sato-Tate histogram
// ---------------------------------------------------------------------

namespace {

// CDF of the semicircle measure: (1/pi)(t sqrt(1-t^2) + asin t) + 1/2.
double semicircle_cdf(double t) {
  t = std::clamp(t, -1.0, 1.0);
  return (t * std::sqrt(1.0 - t * t) + std::asin(t)) / 3.14159265358979324 +
         0.5;
}

}  // namespace

SatoTateHistogram sato_tate_histogram(const ThetaTable& thetas, int bins) {
  if (bins < 2) throw std::invalid_argument("sato_tate_histogram: bins >= 2");
  if (thetas.primes.empty())
    throw std::invalid_argument("sato_tate_histogram: empty theta table");

  SatoTateHistogram h;
  h.bins  = bins;
  h.total = thetas.primes.size();
  h.counts.assign(std::size_t(bins), 0);
  const double w = 2.0 / bins;

  for (double th : thetas.theta) {
    double t = std::cos(th);
    int b    = int((t + 1.0) / w);
    b        = std::clamp(b, 0, bins - 1);
    ++h.counts[std::size_t(b)];
  }

  h.bin_lo.resize(std::size_t(bins));
  h.bin_hi.resize(std::size_t(bins));
  h.observed.resize(std::size_t(bins));
  h.expected.resize(std::size_t(bins));
  for (int b = 0; b < bins; ++b) {
    double lo = -1.0 + w * b, hi = -1.0 + w * (b + 1);
    h.bin_lo[b]   = lo;
    h.bin_hi[b]   = hi;
    h.observed[b] = double(h.counts[b]) / double(h.total);
    h.expected[b] = semicircle_cdf(hi) - semicircle_cdf(lo);
    h.sup_distance =
        std::max(h.sup_distance, std::fabs(h.observed[b] - h.expected[b]));
  }
  return h;
}

// ---------------------------------------------------------------------
// Zero statistics
// ---------------------------------------------------------------------

ZeroDensityReport serre_zero_density(const TauSeries& series,
                                     const ThetaTable& thetas,
                                     const std::vector<u64>& checkpoints) {
  for (u64 x : checkpoints)
    if (x > series.limit())
      throw std::out_of_range("serre_zero_density: checkpoint beyond series");
  ZeroDensityReport r;
  r.checkpoints = checkpoints;

  std::size_t pi = 0;
  u64 zeros_p    = 0;
  u64 nonzero_n  = 0;
  u64 n          = 1;
  for (u64 x : checkpoints) {
    while (pi < thetas.primes.size() && thetas.primes[pi] <= x) {
      if (series.tau(thetas.primes[pi]) == 0) ++zeros_p;
      ++pi;
    }
    for (; n <= x; ++n)
      if (series.tau(n) != 0) ++nonzero_n;
    r.zero_prime_counts.push_back(zeros_p);
    r.nonzero_counts.push_back(nonzero_n);
    r.n_over_t.push_back(double(x) / double(nonzero_n));
  }
  return r;
}

// ---------------------------------------------------------------------
// K(beta) by adaptive Simpson after u = ln(2y)
// ---------------------------------------------------------------------

namespace {

double k_integrand(double beta, double u) {
  double e = std::exp(u);
  double s = 1.0 - e * e / 4.0;
  if (s <= 0.0) return 0.0;
  return std::cos(beta * u) * std::sqrt(s) * (e / 2.0);
}

double adaptive_simpson(double beta, double a, double b, double fa, double fb,
                        double fm, double eps, int depth) {
  double m  = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = k_integrand(beta, lm), frm = k_integrand(beta, rm);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double left  = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * eps)
    return left + right + delta / 15.0;
  return adaptive_simpson(beta, a, m, fa, fm, flm, eps / 2, depth - 1) +
         adaptive_simpson(beta, m, b, fm, fb, frm, eps / 2, depth - 1);
}

}  // namespace

double k_constant(double beta) {
  // Tail below u0 contributes at most e^{u0}/2; u0 = ln(2e-14) keeps it
  // under the 1e-10 budget with room for the quadrature itself.
  const double u0 = std::log(2e-14);
  const double u1 = std::log(2.0);
  double fa       = k_integrand(beta, u0);
  double fb       = k_integrand(beta, u1);
  double fm       = k_integrand(beta, 0.5 * (u0 + u1));
  double v = adaptive_simpson(beta, u0, u1, fa, fb, fm, 2.5e-12, 64);
  return 4.0 / 3.14159265358979324 * v;
}

// ---------------------------------------------------------------------
// Lemma-style empirical prime sums over the angles
// ---------------------------------------------------------------------

Lemma64Series lemma64_empirical(const ThetaTable& thetas, double beta,
                                double gamma,
                                const std::vector<double>& checkpoints) {
  if (checkpoints.empty())
    throw std::invalid_argument("lemma64_empirical: no checkpoints");
  for (double x : checkpoints)
    if (x > double(thetas.prime_limit))
      throw std::out_of_range("lemma64_empirical: checkpoint beyond table");

  Lemma64Series out;
  out.beta        = beta;
  out.gamma       = gamma;
  out.checkpoints = checkpoints;

  kahan_sum cs, ss;
  std::size_t i = 0;
  for (double x : checkpoints) {
    while (i < thetas.primes.size() && double(thetas.primes[i]) <= x) {
      u64 p     = thetas.primes[i];
      double c2 = 2.0 * std::fabs(std::cos(thetas.theta[i]));
      if (c2 != 0.0) {
        double u  = beta * std::log(c2);
        double v  = gamma * std::log(double(p));
        double w  = 1.0 / double(p);
        cs.add(w * std::cos(u) * std::cos(v));
        ss.add(w * std::sin(u) * std::sin(v));
      }
      ++i;
    }
    out.cos_sums.push_back(cs.value());
    out.sin_sums.push_back(ss.value());
  }

  std::vector<double> xs(checkpoints.size());
  for (std::size_t j = 0; j < checkpoints.size(); ++j)
    xs[j] = std::log(std::log(checkpoints[j]));
  std::size_t first = checkpoints.size() / 2;
  if (checkpoints.size() - first < 2) first = 0;
  out.slope = ls_slope(xs, out.cos_sums, first, checkpoints.size());
  return out;
}

}  // namespace benford
