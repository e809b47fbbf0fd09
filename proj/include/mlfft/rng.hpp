#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mlfft {

std::uint64_t splitmix64(std::uint64_t x);
// FNV-1a 64; stable across platforms.
std::uint64_t stable_hash(std::string_view s);

// mt19937_64 with a portable bounded draw (std distributions differ between
// standard libraries).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(splitmix64(seed)) {}
    std::uint64_t seed() const { return seed_; }
    std::uint64_t next() { return eng_(); }
    // Uniform in [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n);
    // Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Seed for an independent stream tagged by key.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t key) {
        return splitmix64(seed ^ splitmix64(key + 0x632be59bd9b4e019ULL));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace mlfft
