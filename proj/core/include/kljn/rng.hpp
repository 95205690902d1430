#pragma once

#include <cstdint>
#include <random>

namespace kljn {

// Substream tags for derive_seed().
enum class Stream : std::uint64_t {
  bit_state = 0x5354415445ULL,
  bep_noise = 0x4e4f495345ULL,
  alice = 0x414c494345ULL,
  bob = 0x424f42ULL,
};

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Child seed for (parent, index, stream); a pure function, so results never
// depend on evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index, Stream stream) {
  return mix64(mix64(mix64(parent) ^ static_cast<std::uint64_t>(stream)) + index);
}

using Engine = std::mt19937_64;

}  // namespace kljn
