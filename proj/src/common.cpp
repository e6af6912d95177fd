#include "benford/common.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace benford {

std::string i128_to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 x   = neg ? u128(-v) : u128(v);
  std::string s;
  while (x) {
    s += char('0' + int(x % 10));
    x /= 10;
  }
  if (neg) s += '-';
  std::reverse(s.begin(), s.end());
  return s;
}

i128 i128_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t i = 0;
  bool neg      = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i   = 1;
  }
  if (i == s.size()) throw std::invalid_argument("bad integer literal: " + s);
  i128 v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw std::invalid_argument("bad integer literal: " + s);
    v = v * 10 + (s[i] - '0');
  }
  return neg ? -v : v;
}

std::vector<double> geometric_checkpoints(double limit, double lo) {
  if (limit < lo) return {limit};
  std::vector<double> cps;
  double l10 = std::log10(lo);
  for (int j = 0;; ++j) {
    double x = std::pow(10.0, l10 + 0.5 * j);
    if (x > limit * (1.0 + 1e-12)) break;
    cps.push_back(x);
  }
  if (cps.empty() || cps.back() < limit * (1.0 - 1e-12)) cps.push_back(limit);
  return cps;
}

std::vector<u64> decade_checkpoints(u64 limit, u64 lo) {
  std::vector<u64> cps;
  for (u64 x = lo; x <= limit && x >= lo; x *= 10) {
    cps.push_back(x);
    if (x > limit / 10) break;
  }
  if (cps.empty() || cps.back() != limit) cps.push_back(limit);
  return cps;
}

double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                std::size_t first, std::size_t last) {
  if (last > xs.size() || first >= last || last - first < 2)
    throw std::invalid_argument("ls_slope: need at least two points");
  double xm = 0, ym = 0;
  for (std::size_t i = first; i < last; ++i) {
    xm += xs[i];
    ym += ys[i];
  }
  double n = double(last - first);
  xm /= n;
  ym /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = first; i < last; ++i) {
    sxy += (xs[i] - xm) * (ys[i] - ym);
    sxx += (xs[i] - xm) * (xs[i] - xm);
  }
  return sxy / sxx;
}

}  // namespace benford
