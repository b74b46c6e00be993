#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace crisp {

/// mt19937_64 is fully specified by the standard, so engine output is
/// portable; the helpers below avoid std::uniform_* distributions, whose
/// sequences are implementation-defined.

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over seed+stream
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Unbiased draw from [0, n) by rejection.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do { x = rng(); } while (x >= limit);
    return x % n;
}

/// Uniform double in [0, 1).
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Fisher-Yates shuffle using bounded().
template <typename T>
void deterministic_shuffle(std::vector<T>& values, std::mt19937_64& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(bounded(rng, i));
        std::swap(values[i - 1], values[j]);
    }
}

}  // namespace crisp
