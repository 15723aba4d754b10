#pragma once

#include "homlab/rational.hpp"

#include <cstdint>
#include <limits>
#include <random>

namespace homlab::detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform integer in [lo, hi] by rejection, independent of the standard
// library's distribution implementations.
inline long draw(std::mt19937_64& rng, long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return lo + static_cast<long>(x % span);
}

inline Rational small_rational(std::mt19937_64& rng, long num_lo, long num_hi, long den_hi) {
    return make_rational(draw(rng, num_lo, num_hi), draw(rng, 1, den_hi));
}

}  // namespace homlab::detail
