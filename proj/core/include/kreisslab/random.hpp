#pragma once

#include <cstdint>
#include <random>

namespace kreisslab {

/// SplitMix64 finaliser; mixes (seed, stream) into an independent 64-bit seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Generator for stream `stream` of `seed`. Results depend only on the pair,
/// never on scheduling.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(derive_seed(seed, stream));
}

}  // namespace kreisslab
