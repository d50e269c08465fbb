#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ldmcap {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash_tag(std::string_view tag) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Child seed for work unit `index` of the stream named `role`.
///
/// Every random draw in the library goes through a seed produced here, so a
/// run is a pure function of the master seed no matter how work units are
/// scheduled across threads.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view role,
                                    std::uint64_t index = 0) noexcept {
  return mix64(mix64(master ^ hash_tag(role)) + mix64(index));
}

inline Rng make_rng(std::uint64_t seed) { return Rng{seed}; }

}  // namespace ldmcap
