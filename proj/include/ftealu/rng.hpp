#pragma once

#include <cstdint>
#include <vector>

namespace ftealu {

// Stateless splitmix64 derivation: draw k of a stream is
// mix(seed + (k+1) * 0x9E3779B97F4A7C15). Identical on every platform;
// the exact constants are part of the reproducibility contract (README).
inline uint64_t splitmix64_mix(uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline uint64_t rng_draw(uint64_t seed, uint64_t index) {
  return splitmix64_mix(seed + (index + 1) * 0x9E3779B97F4A7C15ull);
}

/// Deterministic Fisher-Yates shuffle of 0..n-1 driven by rng_draw(seed, ·).
std::vector<size_t> shuffled_indices(size_t n, uint64_t seed);

}  // namespace ftealu
