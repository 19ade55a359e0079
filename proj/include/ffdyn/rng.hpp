#pragma once

#include <cstdint>

namespace ffdyn {

// Counter-based generator: draw i of a stream is a pure function of
// (seed, i), so estimates are reproducible regardless of evaluation order.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline uint64_t draw_u64(uint64_t seed, uint64_t counter) {
  return splitmix64(splitmix64(seed) ^ splitmix64(counter));
}

// uniform in [0, 1) with 53 random bits
inline double draw_unit(uint64_t seed, uint64_t counter) {
  return static_cast<double>(draw_u64(seed, counter) >> 11) * 0x1.0p-53;
}

}  // namespace ffdyn
