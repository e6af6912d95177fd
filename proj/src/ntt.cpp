#include "benford/ntt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace benford::ntt {

namespace {

// NTT-friendly primes: p - 1 divisible by a large power of two, verified
// primitive roots. Product ~2^180.
struct NttPrime {
  u64 p;
  u64 g;
};
constexpr NttPrime kPrimes[3] = {
    {4179340454199820289ull, 3},   // 29 * 2^57 + 1
    {1945555039024054273ull, 5},   // 27 * 2^56 + 1
    {180143985094819841ull, 6},    // 5 * 2^55 + 1
};

// Montgomery arithmetic mod p, R = 2^64.
struct Mont {
  u64 p = 0, pinv = 0, r2 = 0, one = 0;

  explicit Mont(u64 prime) : p(prime) {
    u64 inv = prime;  // Newton: inv = p^{-1} mod 2^64
    for (int i = 0; i < 6; ++i) inv *= 2 - prime * inv;
    pinv       = ~inv + 1;  // -p^{-1} mod 2^64
    u128 r     = (u128(1) << 64) % prime;
    r2         = u64(u128(r) * r % prime);
    one        = to(1);
  }

  u64 mul(u64 a, u64 b) const {
    u128 t = u128(a) * b;
    u64 m  = u64(t) * pinv;
    u64 r  = u64((t + u128(m) * p) >> 64);
    return r >= p ? r - p : r;
  }
  u64 add(u64 a, u64 b) const {
    u64 r = a + b;
    return r >= p ? r - p : r;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 to(u64 a) const { return mul(a % p, r2); }
  u64 from(u64 a) const { return mul(a, 1); }
  u64 pow(u64 base, u64 e) const {  // base in Montgomery form
    u64 r = one;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }
};

// In-place iterative radix-2 transform; `a` holds Montgomery-form values.
void transform(std::vector<u64>& a, const Mont& M, u64 root_m, bool invert) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    u64 w_len = M.pow(root_m, (M.p - 1) / len);
    if (invert) w_len = M.pow(w_len, M.p - 2);
    const std::size_t half = len >> 1;
    const i64 nblocks      = i64(n / len);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= (1u << 18))
#endif
    for (i64 bi = 0; bi < nblocks; ++bi) {
      std::size_t i = std::size_t(bi) * len;
      u64 w         = M.one;
      for (std::size_t k = 0; k < half; ++k) {
        u64 u          = a[i + k];
        u64 v          = M.mul(a[i + k + half], w);
        a[i + k]        = M.add(u, v);
        a[i + k + half] = M.sub(u, v);
        w               = M.mul(w, w_len);
      }
    }
  }
  if (invert) {
    u64 n_inv = M.pow(M.to(u64(n)), M.p - 2);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= (1u << 18))
#endif
    for (i64 i = 0; i < i64(n); ++i) a[i] = M.mul(a[i], n_inv);
  }
}

// Residues of the truncated square of `a` modulo one prime.
std::vector<u64> square_mod(const std::vector<i128>& a, std::size_t out_len,
                            const Mont& M, u64 g) {
  std::size_t need = 2 * a.size() - 1;
  std::size_t L    = 1;
  while (L < need) L <<= 1;
  u64 root_m = M.to(g);

  std::vector<u64> f(L, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    i128 v = a[i] % i128(M.p);
    if (v < 0) v += i128(M.p);
    f[i] = M.to(u64(v));
  }
  transform(f, M, root_m, false);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (L >= (1u << 18))
#endif
  for (i64 i = 0; i < i64(L); ++i) f[i] = M.mul(f[i], f[i]);
  transform(f, M, root_m, true);
  f.resize(out_len);
  for (auto& v : f) v = M.from(v);
  return f;
}

}  // namespace

std::vector<i128> square_exact(const std::vector<i128>& a,
                               std::size_t out_len) {
  if (a.empty() || out_len == 0) return {};

  // Tiny inputs: schoolbook is cheaper than three transforms.
  if (a.size() <= 64) {
    std::vector<i128> out(out_len, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      if (2 * i < out_len) out[2 * i] += a[i] * a[i];
      for (std::size_t j = i + 1; j < a.size() && i + j < out_len; ++j)
        out[i + j] += 2 * a[i] * a[j];
    }
    return out;
  }

  const Mont M0(kPrimes[0].p), M1(kPrimes[1].p), M2(kPrimes[2].p);
  std::vector<u64> r0 = square_mod(a, out_len, M0, kPrimes[0].g);
  std::vector<u64> r1 = square_mod(a, out_len, M1, kPrimes[1].g);
  std::vector<u64> r2 = square_mod(a, out_len, M2, kPrimes[2].g);

  // Garner mixed-radix reconstruction: v = d0 + d1 p0 + d2 p0 p1 with
  // 0 <= di < pi, then balanced into (-M/2, M/2). The wrap-around value
  // mod 2^128 is exact; a long-double magnitude estimate decides the
  // balancing branch and trips the capacity guard with a wide safety band.
  const u64 p0 = kPrimes[0].p, p1 = kPrimes[1].p, p2 = kPrimes[2].p;
  const u64 inv_p0_m1 =
      M1.pow(M1.to(p0), p1 - 2);  // Montgomery form, mod p1
  const u64 p0p1_mod_p2 = u64(u128(p0 % p2) * (p1 % p2) % p2);
  const u64 inv_p0p1_m2 = M2.pow(M2.to(p0p1_mod_p2), p2 - 2);
  const u128 p0p1       = u128(p0) * p1;       // exact, ~2^123
  const u128 mod_wrap   = p0p1 * u128(p2);     // M mod 2^128, exact
  const long double p0_ld   = (long double)p0;
  const long double p0p1_ld = (long double)p0 * (long double)p1;
  const long double mod_ld  = p0p1_ld * (long double)p2;
  const long double guard   = std::ldexp(1.0L, 126);

  std::vector<i128> out(out_len);
  bool overflow = false;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(|| : overflow)
#endif
  for (i64 i = 0; i < i64(out_len); ++i) {
    const u64 d0 = r0[i];
    const u64 d1 =
        M1.from(M1.mul(M1.to(M1.sub(r1[i], d0 % p1)), inv_p0_m1));
    u64 acc = M2.sub(r2[i], d0 % p2);
    acc     = M2.sub(acc, u64(u128(d1 % p2) * (p0 % p2) % p2));
    const u64 d2 = M2.from(M2.mul(M2.to(acc), inv_p0p1_m2));

    // v = d0 + d1 p0 + d2 p0 p1, tracked exactly mod 2^128 and
    // approximately in long double for the balancing decision.
    u128 wrap = u128(d0) + u128(d1) * p0 + u128(d2) * p0p1;
    long double mag =
        (long double)d0 + (long double)d1 * p0_ld + (long double)d2 * p0p1_ld;
    if (mag > mod_ld / 2) {
      wrap -= mod_wrap;
      mag -= mod_ld;
    }
    if (std::fabs((long double)mag) > guard) {
      overflow = true;
      continue;
    }
    out[i] = i128(wrap);
  }
  if (overflow)
    throw capacity_error(
        "square_exact: a coefficient exceeds the 128-bit guard");
  return out;
}

}  // namespace benford::ntt
