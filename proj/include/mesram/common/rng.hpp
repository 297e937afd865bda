#pragma once

// Counter-based random streams. A draw is a pure function of its key tuple
// (seed, stream, index, ...), so results do not depend on evaluation order or
// on how work is split between threads.

#include <cstdint>
#include <initializer_list>

namespace mesram {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Order-sensitive combination of key words into one 64-bit key.
std::uint64_t hash_keys(std::initializer_list<std::uint64_t> keys);

/// Uniform double in (0, 1] derived from `key`.
double uniform_open01(std::uint64_t key);

/// Two independent standard normals from one key (polar method).
struct NormalPair {
  double first;
  double second;
};
NormalPair standard_normal_pair(std::uint64_t key);

/// Single standard normal; equal to `standard_normal_pair(key).first`.
double standard_normal(std::uint64_t key);

}  // namespace mesram
