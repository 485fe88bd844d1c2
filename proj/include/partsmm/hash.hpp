#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace partsmm {

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// 64-bit FNV-1a; stable across platforms and runs.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t basis = 0xcbf29ce484222325ULL);

/// SplitMix64 finalizer, used to derive independent seeds.
std::uint64_t mix64(std::uint64_t x);

inline std::uint64_t combine_seed(std::uint64_t seed, std::string_view key) {
  return mix64(seed ^ fnv1a64(key));
}

}  // namespace partsmm
