#include <cmath>
#include <random>

#include "benford/nt_core.hpp"
#include "benford/reference.hpp"
#include "doctest.h"

using namespace benford;

TEST_CASE("spf sieve small cases") {
  SpfSieve s = build_spf(10);
  // n:   2  3  4  5  6  7  8  9  10
  u64 expected[] = {2, 3, 2, 5, 2, 7, 2, 3, 2};
  for (u64 n = 2; n <= 10; ++n) CHECK(s.spf(n) == expected[n - 2]);

  SpfSieve s2 = build_spf(2);
  CHECK(s2.spf(2) == 2);
  CHECK(s2.primes().size() == 1);
}

TEST_CASE("spf sieve rejects bad limits") {
  CHECK_THROWS_AS(build_spf(1), std::invalid_argument);
  CHECK_THROWS_AS(build_spf(SpfSieve::kMaxLimit + 1), capacity_error);
}

TEST_CASE("prime count at 1e6 against independent Eratosthenes") {
  SpfSieve s = build_spf(1'000'000);
  u64 fixed_points = 0;
  for (u64 n = 2; n <= 1'000'000; ++n)
    if (s.spf(n) == n) ++fixed_points;
  CHECK(fixed_points == 78498);  // pi(1e6), frozen from the oracle below
  CHECK(ref::prime_count(1'000'000) == 78498);
  CHECK(s.primes().size() == 78498);
}

TEST_CASE("spf agrees with Eratosthenes primality and divides n") {
  SpfSieve s = build_spf(100'000);
  auto is_p  = ref::sieve_eratosthenes(100'000);
  for (u64 n = 2; n <= 100'000; ++n) {
    CHECK(n % s.spf(n) == 0);
    CHECK(is_p[s.spf(n)]);
    CHECK((s.spf(n) == n) == bool(is_p[n]));
  }
}

TEST_CASE("factorize basics") {
  SpfSieve s = build_spf(1'000'000);
  CHECK(factorize(s, 12) ==
        std::vector<std::pair<u64, int>>{{2, 2}, {3, 1}});
  CHECK(factorize(s, 97) == std::vector<std::pair<u64, int>>{{97, 1}});
  CHECK(factorize(s, 720720) ==
        std::vector<std::pair<u64, int>>{
            {2, 4}, {3, 2}, {5, 1}, {7, 1}, {11, 1}, {13, 1}});
  CHECK_THROWS_AS(factorize(s, 1), std::out_of_range);
  CHECK_THROWS_AS(factorize(s, 1'000'001), std::out_of_range);
}

TEST_CASE("factorize round-trips against trial division, exhaustive to 1e5") {
  SpfSieve s = build_spf(100'000);
  for (u64 n = 2; n <= 100'000; ++n) {
    u64 prod = 1, prev = 1;
    for (auto [p, a] : factorize(s, n)) {
      CHECK(p > prev);
      prev = p;
      for (int i = 0; i < a; ++i) prod *= p;
    }
    CHECK(prod == n);
  }
  // spot-check the pair list against plain trial division
  std::mt19937_64 rng(12345);
  for (int t = 0; t < 500; ++t) {
    u64 n = 2 + rng() % 99'999;
    std::vector<std::pair<u64, int>> td;
    u64 m = n;
    for (u64 d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        int a = 0;
        while (m % d == 0) m /= d, ++a;
        td.emplace_back(d, a);
      }
    if (m > 1) td.emplace_back(m, 1);
    CHECK(factorize(s, n) == td);
  }
}

TEST_CASE("mertens reciprocal sum, hand-checked values") {
  SpfSieve s       = build_spf(1'000'000);
  PrimeSumSeries r = mertens_reciprocal_sum(s, {2.0, 10.0, 1e6});
  CHECK(r.values[0].real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.values[1].real() ==
        doctest::Approx(1.0 / 2 + 1.0 / 3 + 1.0 / 5 + 1.0 / 7).epsilon(1e-15));
  // Mertens constant: value - lnln(1e6) within 0.01 of 0.2615 (constant
  // frozen from an independent summation run at 1e8).
  double a = r.values[2].real() - std::log(std::log(1e6));
  CHECK(a == doctest::Approx(0.2615).epsilon(0.04));
  CHECK(std::fabs(a - 0.2615) < 0.01);
}

TEST_CASE("mertens errors") {
  SpfSieve s = build_spf(1000);
  CHECK_THROWS_AS(mertens_reciprocal_sum(s, {1.5}), std::invalid_argument);
  CHECK_THROWS_AS(mertens_reciprocal_sum(s, {10.0, 5.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(mertens_reciprocal_sum(s, {2000.0}), std::out_of_range);
}

TEST_CASE("mertens non-decreasing in x") {
  SpfSieve s       = build_spf(100'000);
  PrimeSumSeries r = mertens_reciprocal_sum(
      s, geometric_checkpoints(1e5, 10.0));
  for (std::size_t i = 1; i < r.values.size(); ++i)
    CHECK(r.values[i].real() >= r.values[i - 1].real());
}

TEST_CASE("prime complex sum: alpha = 0 reduces to reciprocal sum") {
  SpfSieve s        = build_spf(10'000);
  PrimeSumSeries r0 = prime_complex_sum(s, 0.0, {10.0, 1e4});
  PrimeSumSeries rm = mertens_reciprocal_sum(s, {10.0, 1e4});
  CHECK(r0.values[0] == rm.values[0]);
  CHECK(r0.values[1] == rm.values[1]);
  CHECK(r0.values[1].imag() == 0.0);
}

TEST_CASE("prime complex sum stays bounded (frozen oracle bounds)") {
  // Bounds B(alpha) frozen from an oracle pre-run over 1e3..1e7; at the
  // 1e6 limit used here the sup over checkpoints must stay below them.
  SpfSieve s = build_spf(1'000'000);
  auto cps   = geometric_checkpoints(1e6);
  struct Row {
    double alpha, bound;
  } rows[] = {
      {0.5, 1.60}, {1.0, 1.10}, {2.7287527, 0.70}, {5.0, 0.50}};
  for (auto [alpha, bound] : rows) {
    PrimeSumSeries r = prime_complex_sum(s, alpha, cps);
    double sup       = 0;
    for (auto v : r.values) sup = std::max(sup, std::abs(v));
    CHECK(sup < bound);
  }
}

TEST_CASE("lemma-style empirical error bound |sum - lnln x - A| <= C/ln x") {
  SpfSieve s = build_spf(1'000'000);
  auto cps   = geometric_checkpoints(1e6);
  PrimeSumSeries r = mertens_reciprocal_sum(s, cps);
  // fit A from the last checkpoint, C as the max scaled residual
  std::size_t last = r.values.size() - 1;
  double A = r.values[last].real() - std::log(std::log(cps[last]));
  double C = 0;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    double resid = r.values[i].real() - std::log(std::log(cps[i])) - A;
    C            = std::max(C, std::fabs(resid) * std::log(cps[i]));
  }
  CHECK(C < 1.0);  // comfortably O(1/ln x) scale
  // A stable to 3 decimals over the top two decades
  std::size_t i5 = 0;
  for (std::size_t i = 0; i < cps.size(); ++i)
    if (cps[i] <= 1e4 * 1.0001) i5 = i;
  double A_mid = r.values[i5].real() - std::log(std::log(cps[i5]));
  CHECK(std::fabs(A_mid - A) < 5e-4);
}

TEST_CASE("last-decade oscillation of |complex sum| below full range") {
  SpfSieve s = build_spf(1'000'000);
  auto cps   = geometric_checkpoints(1e6);
  for (double alpha : {0.5, 1.0, 2.7287527, 5.0}) {
    PrimeSumSeries r = prime_complex_sum(s, alpha, cps);
    std::vector<double> mags;
    for (auto v : r.values) mags.push_back(std::abs(v));
    auto osc = [&](std::size_t from) {
      double lo = mags[from], hi = mags[from];
      for (std::size_t i = from; i < mags.size(); ++i) {
        lo = std::min(lo, mags[i]);
        hi = std::max(hi, mags[i]);
      }
      return hi - lo;
    };
    // last decade = final two half-decade checkpoints + endpoint
    CHECK(osc(mags.size() - 3) < osc(0));
  }
}
