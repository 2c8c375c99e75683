#pragma once

#include <cstdint>
#include <random>

namespace soids {

// One stream per run; streams are never shared across runs.
using Rng = std::mt19937_64;

// Bijective 64-bit mixer (splitmix64 finalizer). Used for seed derivation:
// feeding distinct inputs yields distinct outputs.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace soids
