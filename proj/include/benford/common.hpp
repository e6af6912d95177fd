#pragma once

// Shared scalar types, error taxonomy and the compensated accumulator used
// by every prime-sum kernel in this project.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace benford {

using u64  = std::uint64_t;
using i64  = std::int64_t;
using u32  = std::uint32_t;
using i128 = __int128_t;
using u128 = __uint128_t;

using cplx = std::complex<double>;

inline constexpr const char* kVersion = "1.0.0";

// Thrown when a requested table would exceed the documented memory bound
// (or an exact-integer coefficient would exceed its width).
class capacity_error : public std::runtime_error {
 public:
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Kahan-compensated accumulator. Prime sums at 1e8 add ~5.7M terms; naive
// summation loses ~3 digits there, compensation keeps the error at ulp scale.
struct kahan_sum {
  double sum = 0.0;
  double c   = 0.0;

  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c        = (t - sum) - y;
    sum      = t;
  }
  double value() const { return sum + c; }
};

struct kahan_csum {
  kahan_sum re, im;
  void add(cplx z) {
    re.add(z.real());
    im.add(z.imag());
  }
  cplx value() const { return {re.value(), im.value()}; }
};

std::string i128_to_string(i128 v);
i128 i128_from_string(const std::string& s);

inline long double i128_to_ld(i128 v) {
  bool neg = v < 0;
  u128 x   = neg ? u128(-v) : u128(v);
  long double r = (long double)(u64)(x >> 64);
  r = r * 18446744073709551616.0L + (long double)(u64)x;
  return neg ? -r : r;
}

// Geometric checkpoint grid x_j = 10^(3 + j/2) capped at limit; the final
// point is limit itself when the grid does not land on it. Matches the
// ln ln x scale of the asymptotics under test.
std::vector<double> geometric_checkpoints(double limit, double lo = 1e3);

// Powers of ten 10^3, 10^4, ..., capped at limit (limit appended if absent).
std::vector<u64> decade_checkpoints(u64 limit, u64 lo = 1000);

// Least-squares slope of ys against xs over the index range [first, last).
double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                std::size_t first, std::size_t last);

}  // namespace benford
