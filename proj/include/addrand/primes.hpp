#pragma once

// Exact number-theoretic tests over the full 64-bit range.

#include <cstdint>
#include <span>
#include <vector>

#include "addrand/arith.hpp"

namespace addrand {

/// All primes below 2^21 + 64, sieved once on first use.
std::span<const std::uint32_t> small_primes();

/// Primes p with p <= limit (limit must not exceed the small-prime table).
std::vector<Int> primes_up_to(Int limit);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// True iff n != 0 and no p^2 divides n.
bool is_square_free(Int n);

/// Distinct prime factors of |n| in increasing order; empty for 0 and +-1.
std::vector<Int> prime_factors(Int n);

/// Floor of the square root.
std::uint64_t isqrt(std::uint64_t n);

}  // namespace addrand
