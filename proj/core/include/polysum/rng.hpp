#pragma once

#include <cstdint>

namespace polysum {

/// splitmix64: the single deterministic generator behind every random
/// choice in the toolkit. The exact recurrence is part of the external
/// contract so that instances can be reproduced bit-for-bit elsewhere:
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   output = z ^ (z >> 31)
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound); bound must be positive. Modulo bias
    /// is irrelevant at the bounds used here but kept deterministic.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    /// Uniform integer in [lo, hi] inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t state_;
};

} // namespace polysum
