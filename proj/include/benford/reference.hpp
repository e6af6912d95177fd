#pragma once

// Serial reference implementations, kept deliberately plain: single loop,
// no blocking, no rotation tricks. The parallel kernels are tested against
// these and the bench target times the two side by side. Also home to the
// independent oracles the tests freeze expected values from.

#include <vector>

#include "benford/benford_stats.hpp"
#include "benford/mf_spec.hpp"
#include "benford/nt_core.hpp"
#include "benford/pretend.hpp"

namespace benford::ref {

// Plain Eratosthenes (no SPF logic shared with SpfSieve).
std::vector<bool> sieve_eratosthenes(u64 limit);
u64 prime_count(u64 limit);

// Straight per-n evaluation, one thread, no blocking.
LogTable build_log_table(const FunctionSpec& spec, const SpfSieve& sieve,
                         u64 N, const TauContext* ctx = nullptr);

// One Kahan pass over n, snapshots at checkpoints.
WeylSeries weyl_sums(const LogTable& table, int ell,
                     const std::vector<u64>& checkpoints);

// One cosine evaluation per (prime, alpha) grid point.
AlphaScanResult alpha_scan(const PrimeProfile& profile, int ell,
                           const ScanParams& params);

// Truncated schoolbook square in exact 128-bit arithmetic.
std::vector<i128> square_schoolbook(const std::vector<i128>& a,
                                    std::size_t out_len);

// Direct expansion of q * prod_{n<=N}(1-q^n)^24, exact integers: the
// independent route to tau used by the tests.
std::vector<i128> tau_eta24_direct(u64 N);

}  // namespace benford::ref
