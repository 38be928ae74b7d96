#pragma once

#include <cmath>
#include <cstdint>

namespace mkt::rng {

/// SplitMix64 finalizer. Full-avalanche mix of a 64-bit word.
inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based stream: one independent 64-bit value per (seed, a, b, c,
/// salt) tuple. Evaluation order of callers cannot change the draw, which
/// keeps noise and simulation output reproducible under any scheduling.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                  std::uint64_t c, std::uint64_t salt) noexcept {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    h = splitmix64(h ^ c);
    h = splitmix64(h ^ salt);
    return h;
}

/// Maps a hash to the open interval (0, 1). Uses 52 bits so both extremes
/// stay representable strictly inside the interval (with 53 bits the top
/// value rounds to exactly 1.0).
inline double to_unit(std::uint64_t h) noexcept {
    return (static_cast<double>(h >> 12) + 0.5) * (1.0 / 4503599627370496.0);  // 2^-52
}

/// Standard normal draw for counter (seed, a, b, c) via Box-Muller.
inline double gaussian(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                       std::uint64_t c) noexcept {
    const double u1 = to_unit(counter_hash(seed, a, b, c, 0));
    const double u2 = to_unit(counter_hash(seed, a, b, c, 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

}  // namespace mkt::rng
