#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "zkdesk/scalar.hpp"

namespace zkdesk {

/// Deterministic randomness for setup, minting and pouring. Every stream is
/// identified by (seed, purpose tag), so independent consumers of one --seed
/// never share output. Built on std::mt19937_64, whose output sequence is fixed
/// by the standard; only raw words are used.
class SeededRng {
 public:
  SeededRng(std::uint64_t seed, std::string_view tag);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform-enough element of the field (320 random bits reduced mod p).
  Scalar next_scalar(Domain field);
  Scalar next_nonzero_scalar(Domain field);

 private:
  std::mt19937_64 engine_;
};

/// 64-bit FNV-1a, used for stable tags and digests.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);

}  // namespace zkdesk
