#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace vigilsim::rng {

// SplitMix64 finisher. Used as a counter-based generator: every draw is
// addressable by an explicit key, so renders are reproducible pixel by pixel.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2)));
}

// Uniform in [0, 1).
inline double uniform01(std::uint64_t key) {
    return double(splitmix64(key) >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller, one value per key.
inline double gaussian(std::uint64_t key) {
    const std::uint64_t k1 = splitmix64(key);
    const std::uint64_t k2 = splitmix64(k1);
    const double u1 = (double(k1 >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = double(k2 >> 11) * 0x1.0p-53;          // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace vigilsim::rng
