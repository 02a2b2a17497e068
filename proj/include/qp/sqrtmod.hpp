#pragma once

#include <cstdint>
#include <optional>
#include <utility>

namespace qp {

// The two residues u in [0,p) with 4u^2+1 == 0 (mod p), for an odd prime p.
// Such u exist exactly when p == 1 (mod 4); returns nullopt for p == 3 (mod 4).
// Throws std::invalid_argument when p is not an odd prime.
std::optional<std::pair<std::uint64_t, std::uint64_t>>
root_of_minus_one(std::uint64_t p);

} // namespace qp
