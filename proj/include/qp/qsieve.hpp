#pragma once

#include <qp/events.hpp>

#include <cstdint>
#include <vector>

namespace qp {

// One half-open range [k_lo, k_hi) of candidate indices.  A set survivor
// bit means 4k^2+1 has no prime factor <= sieve_bound; the sieve never
// clears a k whose 4k^2+1 is prime.
struct SieveSegment {
    std::uint64_t k_lo = 0;
    std::uint64_t k_hi = 0;
    std::uint32_t sieve_bound = 0;
    std::vector<bool> survivor;  // length k_hi - k_lo

    bool survives(std::uint64_t k) const { return survivor[k - k_lo]; }
};

// Sieve [k_lo, k_hi) with the given ascending prime list.  Only primes
// p == 1 (mod 4) remove anything: they clear k == +-u (mod p) where
// 4u^2+1 == 0 (mod p), except the single k with 4k^2+1 == p itself.
SieveSegment sieve_segment(std::uint64_t k_lo, std::uint64_t k_hi,
                           const std::vector<std::uint32_t>& primes);

struct EnumerateOptions {
    std::uint64_t segment_size = 1ull << 22;
    unsigned threads = 1;
    std::uint32_t sieve_bound = 0;  // 0 = choose from k range
};

struct EnumerateSummary {
    std::uint64_t count = 0;   // events emitted (= pi_q(x_max))
    std::uint64_t k_last = 0;  // largest prime-producing k
    std::uint64_t k_scanned = 0;  // largest k examined, prime or not
};

// Emit every q-prime <= x_max in ascending order, starting with q=2 (k=0).
// Deterministic: the event stream does not depend on segment size or the
// number of worker threads.
EnumerateSummary enumerate_qprimes(std::uint64_t x_max, const EventSink& sink,
                                   const EnumerateOptions& opts = {});

// Largest k with 4k^2+1 <= x (0 when x < 5).
std::uint64_t max_k_for(std::uint64_t x);

} // namespace qp
