#pragma once

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, index), so parallel consumers reproduce the same stream
// regardless of scheduling.

#include <cstdint>

namespace riesz {

inline std::uint64_t mix64(std::uint64_t z) {
  // splitmix64 finalizer
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t counter_random(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t index) {
  return mix64(mix64(mix64(seed) ^ stream) ^ index);
}

// Unbiased uniform integer in [0, bound) (Lemire's multiply-shift with
// rejection), keyed by (seed, stream, index).
inline std::uint64_t counter_uniform(std::uint64_t seed, std::uint64_t stream,
                                     std::uint64_t index, std::uint64_t bound) {
  std::uint64_t x = counter_random(seed, stream, index);
  unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t retry = 1;
    while (low < threshold) {
      x = mix64(x ^ (0xd1b54a32d192ed03ULL * retry++));
      m = static_cast<unsigned __int128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace riesz
