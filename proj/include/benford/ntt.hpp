#pragma once

// Exact truncated squaring of integer power series via number-theoretic
// transforms over three 61-62 bit primes with CRT reconstruction.

#include <cstddef>
#include <vector>

#include "benford/common.hpp"

namespace benford::ntt {

// Returns the first out_len coefficients of a(q)^2, exactly. Throws
// capacity_error if any true coefficient magnitude reaches 2^126 (the
// three-prime modulus covers ~180 bits, so aliasing is detected long
// before it could corrupt a result in the supported range).
std::vector<i128> square_exact(const std::vector<i128>& a,
                               std::size_t out_len);

}  // namespace benford::ntt
