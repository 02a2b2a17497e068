#include <qp/sqrtmod.hpp>

#include <qp/primality.hpp>

#include <stdexcept>

namespace qp {

using detail::mulmod;
using detail::powmod;

std::optional<std::pair<std::uint64_t, std::uint64_t>>
root_of_minus_one(std::uint64_t p) {
    if (p < 3 || (p & 1) == 0 || !is_prime(p))
        throw std::invalid_argument("root_of_minus_one: p must be an odd prime");
    if (p % 4 == 3) return std::nullopt;

    // sqrt(-1) mod p: r = n^((p-1)/4) for any quadratic non-residue n.
    // Half of all residues qualify, so the scan terminates immediately
    // in practice.
    std::uint64_t r = 0;
    for (std::uint64_t n = 2; ; ++n) {
        if (powmod(n, (p - 1) / 2, p) == p - 1) {
            r = powmod(n, (p - 1) / 4, p);
            break;
        }
    }
    // 4u^2+1 == 0  <=>  (2u)^2 == -1, so u = +-r/2 mod p.
    const std::uint64_t inv2 = (p + 1) / 2;
    std::uint64_t u = mulmod(r, inv2, p);
    std::uint64_t v = p - u;
    if (u > v) std::swap(u, v);
    return std::make_pair(u, v);
}

} // namespace qp
