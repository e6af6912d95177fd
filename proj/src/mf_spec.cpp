#include "benford/mf_spec.hpp"

#include <cmath>
#include <cstdlib>
#include <memory>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "benford/modforms.hpp"

namespace benford {

FunctionSpec FunctionSpec::divisor(int k) {
  if (k < 2) throw std::invalid_argument("divisor_k requires k >= 2");
  FunctionSpec s;
  s.kind_ = SpecKind::divisor_k;
  s.k_    = k;
  return s;
}

FunctionSpec FunctionSpec::phi() {
  FunctionSpec s;
  s.kind_ = SpecKind::euler_phi;
  return s;
}

FunctionSpec FunctionSpec::power(double a) {
  FunctionSpec s;
  s.kind_ = SpecKind::power;
  s.a_    = a;
  return s;
}

FunctionSpec FunctionSpec::tau() {
  FunctionSpec s;
  s.kind_ = SpecKind::tau_newform;
  return s;
}

FunctionSpec FunctionSpec::one() {
  FunctionSpec s;
  s.kind_ = SpecKind::constant_one;
  return s;
}

bool FunctionSpec::can_vanish() const {
  switch (kind_) {
    case SpecKind::tau_newform: return true;
    case SpecKind::product: return left_->can_vanish() || right_->can_vanish();
    case SpecKind::reciprocal: return left_->can_vanish();
    default: return false;
  }
}

FunctionSpec compose_product(FunctionSpec l, FunctionSpec r) {
  FunctionSpec s;
  s.kind_  = SpecKind::product;
  s.left_  = std::make_shared<FunctionSpec>(std::move(l));
  s.right_ = std::make_shared<FunctionSpec>(std::move(r));
  return s;
}

FunctionSpec compose_reciprocal(FunctionSpec inner) {
  if (inner.can_vanish())
    throw std::invalid_argument(
        "reciprocal requires a nowhere-zero spec (tau can vanish)");
  FunctionSpec s;
  s.kind_ = SpecKind::reciprocal;
  s.left_ = std::make_shared<FunctionSpec>(std::move(inner));
  return s;
}

// ---------------------------------------------------------------------
// Text form: dk:K, phi, pow:A, tau, one, prod(S,S), inv(S)
// ---------------------------------------------------------------------

namespace {

struct Parser {
  const std::string& s;
  std::size_t i = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("spec parse error at offset " +
                                std::to_string(i) + ": " + why + " in '" + s +
                                "'");
  }

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }

  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  std::string ident() {
    skip_ws();
    std::size_t b = i;
    while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_'))
      ++i;
    if (b == i) fail("expected a name");
    return s.substr(b, i - b);
  }

  std::string number_token() {
    skip_ws();
    std::size_t b = i;
    while (i < s.size() &&
           (std::isdigit((unsigned char)s[i]) || s[i] == '+' || s[i] == '-' ||
            s[i] == '.' || s[i] == 'e' || s[i] == 'E'))
      ++i;
    if (b == i) fail("expected a number");
    return s.substr(b, i - b);
  }

  FunctionSpec parse() {
    std::string name = ident();
    if (name == "phi") return FunctionSpec::phi();
    if (name == "tau") return FunctionSpec::tau();
    if (name == "one") return FunctionSpec::one();
    if (name == "dk") {
      if (!eat(':')) fail("dk needs ':k'");
      std::string t = number_token();
      char* end     = nullptr;
      long k        = std::strtol(t.c_str(), &end, 10);
      if (end != t.c_str() + t.size() || k < 2) fail("dk:k needs integer k >= 2");
      return FunctionSpec::divisor(int(k));
    }
    if (name == "pow") {
      if (!eat(':')) fail("pow needs ':a'");
      std::string t = number_token();
      char* end     = nullptr;
      double a      = std::strtod(t.c_str(), &end);
      if (end != t.c_str() + t.size()) fail("bad power exponent");
      return FunctionSpec::power(a);
    }
    if (name == "prod") {
      if (!eat('(')) fail("prod needs '('");
      FunctionSpec l = parse();
      if (!eat(',')) fail("prod needs ','");
      FunctionSpec r = parse();
      if (!eat(')')) fail("prod needs ')'");
      return compose_product(std::move(l), std::move(r));
    }
    if (name == "inv") {
      if (!eat('(')) fail("inv needs '('");
      FunctionSpec inner = parse();
      if (!eat(')')) fail("inv needs ')'");
      return compose_reciprocal(std::move(inner));
    }
    fail("unknown spec '" + name + "'");
  }
};

void format_double(std::string& out, double v);

}  // namespace

FunctionSpec parse_spec(const std::string& text) {
  Parser p{text};
  FunctionSpec s = p.parse();
  p.skip_ws();
  if (p.i != text.size()) p.fail("trailing input");
  return s;
}

namespace {

void format_double(std::string& out, double v) {
  char buf[48];
  int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  // trim to the shortest form that round-trips
  for (int prec = 1; prec < 17; ++prec) {
    char b2[48];
    std::snprintf(b2, sizeof b2, "%.*g", prec, v);
    if (std::strtod(b2, nullptr) == v) {
      out += b2;
      return;
    }
  }
  out.append(buf, std::size_t(n));
}

}  // namespace

std::string to_string(const FunctionSpec& spec) {
  switch (spec.kind()) {
    case SpecKind::divisor_k: return "dk:" + std::to_string(spec.divisor_k());
    case SpecKind::euler_phi: return "phi";
    case SpecKind::tau_newform: return "tau";
    case SpecKind::constant_one: return "one";
    case SpecKind::power: {
      std::string out = "pow:";
      format_double(out, spec.power_exponent());
      return out;
    }
    case SpecKind::product:
      return "prod(" + to_string(spec.left()) + "," + to_string(spec.right()) +
             ")";
    case SpecKind::reciprocal: return "inv(" + to_string(spec.inner()) + ")";
  }
  throw std::logic_error("unreachable spec kind");
}

// ---------------------------------------------------------------------
// Prime-power evaluation
// ---------------------------------------------------------------------

namespace {

constexpr double kLn10 = 2.302585092994045684;

// C(k-1+a, a) = d_k(p^a), exact in unsigned 128-bit when it fits; the
// lgamma fallback only triggers for k in the thousands at large a, far
// beyond the 1e-12 reconstruction domain.
double log10_multiset_coefficient(int k, int a) {
  u128 c        = 1;
  bool overflow = false;
  for (int i = 1; i <= a; ++i) {
    u128 num = u128(k - 1 + i);
    if (__builtin_mul_overflow(c, num, &c)) {
      overflow = true;
      break;
    }
    c /= u128(i);  // product of i consecutive integers is divisible by i!
  }
  if (!overflow) return double(std::log10(i128_to_ld(i128(c))));
  long double ln =
      std::lgammal((long double)(k + a)) - std::lgammal((long double)(a + 1)) -
      std::lgammal((long double)k);
  return double(ln / kLn10);
}

}  // namespace

PrimePowerValue eval_prime_power(const FunctionSpec& spec, u64 p, int a,
                                 const TauContext* ctx) {
  if (a < 1) throw std::invalid_argument("eval_prime_power: a >= 1 required");
  switch (spec.kind()) {
    case SpecKind::constant_one: return {0.0, false};
    case SpecKind::divisor_k:
      return {log10_multiset_coefficient(spec.divisor_k(), a), false};
    case SpecKind::euler_phi:
      // phi(p^a) = p^{a-1} (p-1)
      return {(a - 1) * std::log10(double(p)) + std::log10(double(p - 1)),
              false};
    case SpecKind::power:
      return {double(a) * spec.power_exponent() * std::log10(double(p)),
              false};
    case SpecKind::tau_newform: {
      if (!ctx || !ctx->thetas)
        throw std::invalid_argument(
            "tau spec evaluated without a theta table");
      return tau_prime_power_log(p, a, ctx->thetas->theta_of(p), ctx->series);
    }
    case SpecKind::product: {
      PrimePowerValue l = eval_prime_power(spec.left(), p, a, ctx);
      PrimePowerValue r = eval_prime_power(spec.right(), p, a, ctx);
      if (l.is_zero || r.is_zero) return {0.0, true};
      return {l.log10_abs + r.log10_abs, false};
    }
    case SpecKind::reciprocal: {
      PrimePowerValue v = eval_prime_power(spec.inner(), p, a, ctx);
      if (v.is_zero)
        throw std::domain_error("reciprocal of a vanishing prime power");
      return {-v.log10_abs, false};
    }
  }
  throw std::logic_error("unreachable spec kind");
}

// ---------------------------------------------------------------------
// Log table
// ---------------------------------------------------------------------

u64 LogTable::count_nonzero_upto(u64 n) const {
  u64 cnt       = 0;
  u64 last_word = n >> 6;
  for (u64 w = 0; w < last_word; ++w) cnt += u64(__builtin_popcountll(zero_words[w]));
  u64 rem = (n & 63) + 1;  // bits 0..n&63 of the last word
  u64 mask = rem == 64 ? ~0ull : ((1ull << rem) - 1);
  cnt += u64(__builtin_popcountll(zero_words[last_word] & mask));
  // bits count zeros including bit 0 (n=0, never set); n entries counted are 1..n
  return n - cnt;
}

LogTable build_log_table(const FunctionSpec& spec, const SpfSieve& sieve,
                         u64 N, const TauContext* ctx) {
  if (N < 1 || N > sieve.limit())
    throw std::out_of_range("build_log_table: N beyond sieve limit");
  if (spec.can_vanish() && (!ctx || !ctx->thetas))
    throw std::invalid_argument("tau spec needs a TauContext");
  if (spec.can_vanish() && ctx->thetas->prime_limit < N)
    throw std::out_of_range(
        "theta table covers fewer primes than the requested table limit");

  LogTable t;
  t.limit = N;
  t.frac.assign(N + 1, 0.0);
  t.zero_words.assign((N >> 6) + 1, 0);

  // Blocks are fixed-size and word-aligned, so the parallel fill touches
  // disjoint cache lines and the result does not depend on thread count.
  constexpr u64 kBlock = 1 << 16;
  const i64 nblocks    = i64((N + kBlock) / kBlock);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (i64 b = 0; b < nblocks; ++b) {
    u64 lo = u64(b) * kBlock;
    u64 hi = std::min(N, lo + kBlock - 1);
    if (lo < 2) lo = 2;
    for (u64 n = lo; n <= hi; ++n) {
      u64 m      = n;
      double sum = 0.0;
      bool zero  = false;
      while (m > 1) {
        u64 p = sieve.spf(m);
        int a = 0;
        do {
          m /= p;
          ++a;
        } while (m > 1 && sieve.spf(m) == p);
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
        double f = sum - std::floor(sum);  // one reduction per n
        if (f >= 1.0) f -= 1.0;
        if (f < 0.0) f = 0.0;
        t.frac[n] = f;
      }
    }
  }

  // n = 1: empty product, frac 0, nonzero.
  if (N >= 1) t.frac[1] = 0.0;

  for (double x : geometric_checkpoints(double(N))) {
    u64 xi = std::min(N, u64(x));
    t.nonzero_counts.emplace_back(xi, t.count_nonzero_upto(xi));
  }
  t.total_nonzero = t.nonzero_counts.back().second;
  return t;
}

}  // namespace benford
