#pragma once

#include <cstdint>

namespace agdec {

// SplitMix64: tiny, fast, and statistically solid for simulation seeding.
// Reference implementation by Sebastiano Vigna (public domain).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). bound must be nonzero. Modulo bias is
    // negligible for the small bounds used here (bound <= field size).
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

} // namespace agdec
