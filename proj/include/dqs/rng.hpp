#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace dqs {

// The mt19937_64 output stream is fully specified by the standard, but the
// distribution adaptors are not; these two mappings keep every seeded result
// bit-identical across platforms.
inline constexpr const char* kGeneratorName = "mt19937_64";

// Uniform double in [0, 1) from the top 53 bits.
inline double canonical_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n), rejection sampled.
inline std::uint64_t bounded_uint(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t v = rng();
    while (v >= limit) v = rng();
    return v % n;
}

}  // namespace dqs
