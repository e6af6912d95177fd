#pragma once

// Symbolic multiplicative-function specs and sieve-driven construction of
// per-n tables of frac(log10|h(n)|) with zero tracking.
//
// A real multiplicative function is determined by its values at prime
// powers; everything here works in the log domain, additively over the
// factorization, so h(n) itself is never evaluated as a number (d_k, phi
// and tau all overflow fixed-width integers long before the table limits
// matter).

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "benford/nt_core.hpp"

namespace benford {

class TauSeries;
struct ThetaTable;

// Sources for tau evaluations; required iff the spec mentions `tau`.
struct TauContext {
  const ThetaTable* thetas = nullptr;
  const TauSeries* series  = nullptr;  // optional, sharpens zero detection
};

enum class SpecKind {
  divisor_k,     // d_k(n), k >= 2
  euler_phi,     // phi(n)
  power,         // n^a, a real
  tau_newform,   // Ramanujan tau
  constant_one,  // h == 1
  product,       // pointwise product of two specs
  reciprocal     // pointwise 1/h, h nowhere zero
};

// Immutable spec tree. Canonical text forms: dk:2, phi, pow:1.5, tau, one,
// prod(dk:2,phi), inv(phi); parse_spec round-trips with to_string.
class FunctionSpec {
 public:
  static FunctionSpec divisor(int k);
  static FunctionSpec phi();
  static FunctionSpec power(double a);
  static FunctionSpec tau();
  static FunctionSpec one();

  SpecKind kind() const { return kind_; }
  int divisor_k() const { return k_; }
  double power_exponent() const { return a_; }
  const FunctionSpec& left() const { return *left_; }
  const FunctionSpec& right() const { return *right_; }
  const FunctionSpec& inner() const { return *left_; }

  // True when some n may have h(n) = 0 (only tau can vanish).
  bool can_vanish() const;

  friend FunctionSpec compose_product(FunctionSpec l, FunctionSpec r);
  friend FunctionSpec compose_reciprocal(FunctionSpec inner);

 private:
  FunctionSpec() = default;
  SpecKind kind_ = SpecKind::constant_one;
  int k_         = 0;
  double a_      = 0.0;
  std::shared_ptr<const FunctionSpec> left_, right_;
};

FunctionSpec compose_product(FunctionSpec l, FunctionSpec r);
// Rejects specs that may vanish somewhere (i.e. anything containing tau).
FunctionSpec compose_reciprocal(FunctionSpec inner);

FunctionSpec parse_spec(const std::string& text);
std::string to_string(const FunctionSpec& spec);

// log10|h(p^a)| plus a zero flag; when is_zero is set the log value is
// meaningless and must not be read.
struct PrimePowerValue {
  double log10_abs = 0.0;
  bool is_zero     = false;
};

// p must be prime (caller-validated), a >= 1.
PrimePowerValue eval_prime_power(const FunctionSpec& spec, u64 p, int a,
                                 const TauContext* ctx = nullptr);

// Per-n table of frac(log10|h(n)|) in [0,1) with packed zero flags and the
// nonzero counts T_x at geometric checkpoints.
struct LogTable {
  u64 limit = 0;
  std::vector<double> frac;      // index n; [0] unused; undefined where zero
  std::vector<u64> zero_words;   // bit n set <=> h(n) == 0
  std::vector<std::pair<u64, u64>> nonzero_counts;  // (x, T_x)
  u64 total_nonzero = 0;         // T_limit

  bool is_zero(u64 n) const {
    return (zero_words[n >> 6] >> (n & 63)) & 1;
  }
  double frac_at(u64 n) const { return frac[n]; }
  u64 count_nonzero_upto(u64 n) const;
};

// Factors each n via the sieve, sums log10|h| over the prime powers and
// reduces mod 1 once per n. n = 1 is stored as frac 0, nonzero.
LogTable build_log_table(const FunctionSpec& spec, const SpfSieve& sieve,
                         u64 N, const TauContext* ctx = nullptr);

}  // namespace benford
