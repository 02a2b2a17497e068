#pragma once

#include <cstdint>
#include <vector>

namespace qp {

// Deterministic primality for the full 64-bit range (Miller-Rabin with a
// verified 7-base set).  Exactness below 2^64 is relied on everywhere:
// the sieve only removes candidates, this decides them.
bool is_prime(std::uint64_t n);

// Ascending list of all primes <= bound (simple sieve of Eratosthenes;
// bound is capped by available memory, intended for small-prime tables).
std::vector<std::uint32_t> primes_up_to(std::uint32_t bound);

namespace detail {
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
} // namespace detail

} // namespace qp
