#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "zkdesk/r1cs.hpp"
#include "zkdesk/scalar.hpp"

namespace zkdesk {

/// MiMC-style permutation x -> (x + c_i)^3 for i = 1..rounds, c_i = i, used as
/// a rate-1 sponge. Cheap in R1CS (two rows per round), NOT a hash of
/// real-world strength.
class Mimc {
 public:
  static constexpr unsigned kRounds = 11;
  static constexpr unsigned kExponent = 3;

  /// Throws Error unless `field` is a prime field with gcd(3, p - 1) = 1,
  /// i.e. cubing is a permutation.
  explicit Mimc(Domain field, unsigned rounds = kRounds);

  Domain domain() const { return d_; }
  unsigned rounds() const { return static_cast<unsigned>(constants_.size()); }
  const std::vector<Scalar>& constants() const { return constants_; }

  Scalar permute(Scalar x) const;
  /// state = 0; state = permute(state + m) for each m. Throws Error on empty input.
  Scalar hash(std::span<const Scalar> inputs) const;
  Scalar hash(std::initializer_list<Scalar> inputs) const {
    return hash(std::span<const Scalar>(inputs.begin(), inputs.size()));
  }
  /// Keyed function hash([key, x]).
  Scalar prf(const Scalar& key, const Scalar& x) const { return hash({key, x}); }

  // In-circuit versions. When `out` is given the last round's product is
  // constrained into that existing wire instead of a fresh one.
  std::size_t permute_gadget(R1csBuilder& b, const LinearCombination& x,
                             std::optional<std::size_t> out = std::nullopt) const;
  std::size_t hash_gadget(R1csBuilder& b, std::span<const LinearCombination> inputs,
                          std::optional<std::size_t> out = std::nullopt) const;
  std::size_t hash_gadget(R1csBuilder& b, std::initializer_list<LinearCombination> inputs,
                          std::optional<std::size_t> out = std::nullopt) const {
    return hash_gadget(b, std::span<const LinearCombination>(inputs.begin(), inputs.size()), out);
  }

 private:
  Domain d_;
  std::vector<Scalar> constants_;
};

}  // namespace zkdesk
