#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace seccell {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent stream seed from a base seed and a tuple of indices
/// (e.g. slot, user, purpose), so results do not depend on evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = mix64(base);
  for (std::uint64_t p : parts) h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

// Stream tags for derive_seed.
inline constexpr std::uint64_t kStreamChannel = 1;
inline constexpr std::uint64_t kStreamPso = 2;
inline constexpr std::uint64_t kStreamLayout = 3;

}  // namespace seccell
