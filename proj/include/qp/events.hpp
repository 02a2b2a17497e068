#pragma once

#include <cstdint>
#include <functional>

namespace qp {

// One prime of the form 4k^2+1 (k >= 1), or the special prime 2 encoded
// as k = 0.  residue3 is q mod 3 and is always 1 or 2: 3 never divides
// a number of the form m^2+1.
struct QPrimeEvent {
    std::uint64_t k;
    std::uint64_t q;
    std::uint8_t residue3;
};

inline QPrimeEvent make_event(std::uint64_t k) {
    if (k == 0) return {0, 2, 2};
    const std::uint64_t q = 4 * k * k + 1;
    return {k, q, static_cast<std::uint8_t>(k % 3 == 0 ? 1 : 2)};
}

using EventSink = std::function<void(const QPrimeEvent&)>;

} // namespace qp
