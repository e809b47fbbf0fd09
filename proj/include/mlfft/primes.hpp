#pragma once

#include <cstdint>

namespace mlfft {

// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(std::uint64_t n);
// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

}  // namespace mlfft
