#pragma once

#include <cstdint>
#include <random>

namespace mvl {

inline constexpr std::uint64_t kDefaultSeed = 0xD00D;

using Rng = std::mt19937_64;

/// Uniform-ish draw in [0, n). mt19937_64 output is fixed by the standard, so unlike
/// std::uniform_int_distribution this is reproducible across standard libraries.
inline std::uint64_t draw(Rng& rng, std::uint64_t n) { return n ? rng() % n : 0; }

}  // namespace mvl
