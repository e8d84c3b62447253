#include "zkdesk/rng.hpp"

#include <array>

namespace zkdesk {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

SeededRng::SeededRng(std::uint64_t seed, std::string_view tag) {
  const std::uint64_t t = fnv1a(tag);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
  engine_.seed(seq);
}

Scalar SeededRng::next_scalar(Domain field) {
  if (field.is_rational()) throw ModeMismatch("random sampling needs a prime field");
  std::array<std::uint64_t, 5> words;
  for (auto& w : words) w = engine_();
  mpz_class z;
  mpz_import(z.get_mpz_t(), words.size(), 1, sizeof(std::uint64_t), 0, 0, words.data());
  return Scalar(field, z);
}

Scalar SeededRng::next_nonzero_scalar(Domain field) {
  for (;;) {
    Scalar s = next_scalar(field);
    if (!s.is_zero()) return s;
  }
}

}  // namespace zkdesk
