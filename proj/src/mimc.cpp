#include "zkdesk/mimc.hpp"

namespace zkdesk {

Mimc::Mimc(Domain field, unsigned rounds) : d_(field) {
  if (field.is_rational()) throw Error("MiMC needs a prime field");
  mpz_class g;
  mpz_class pm1 = field.field->modulus() - 1;
  mpz_gcd_ui(g.get_mpz_t(), pm1.get_mpz_t(), kExponent);
  if (g != 1) {
    throw Error("x^3 is not a permutation of GF(p) for p = " + field.field->modulus_string() +
                " (3 divides p - 1)");
  }
  if (rounds == 0) throw Error("MiMC needs at least one round");
  for (unsigned i = 1; i <= rounds; ++i) constants_.emplace_back(field, static_cast<long>(i));
}

Scalar Mimc::permute(Scalar x) const {
  for (const auto& c : constants_) {
    Scalar a = x + c;
    x = a * a * a;
  }
  return x;
}

Scalar Mimc::hash(std::span<const Scalar> inputs) const {
  if (inputs.empty()) throw Error("MiMC hash of an empty input");
  Scalar state = Scalar::zero(d_);
  for (const auto& m : inputs) state = permute(state + m);
  return state;
}

std::size_t Mimc::permute_gadget(R1csBuilder& b, const LinearCombination& x,
                                 std::optional<std::size_t> out) const {
  LinearCombination cur = x;
  std::size_t last = 0;
  for (std::size_t i = 0; i < constants_.size(); ++i) {
    const LinearCombination a = cur + b.constant(constants_[i]);
    const std::size_t sq = b.mul(a, a, "mimc.sq");
    if (out && i + 1 == constants_.size()) {
      b.mul_into(b.lc(sq), a, *out);
      last = *out;
    } else {
      last = b.mul(b.lc(sq), a, "mimc.x");
    }
    cur = b.lc(last);
  }
  return last;
}

std::size_t Mimc::hash_gadget(R1csBuilder& b, std::span<const LinearCombination> inputs,
                              std::optional<std::size_t> out) const {
  if (inputs.empty()) throw Error("MiMC hash of an empty input");
  LinearCombination state;
  std::size_t w = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const bool last = i + 1 == inputs.size();
    w = permute_gadget(b, state + inputs[i], last ? out : std::nullopt);
    state = b.lc(w);
  }
  return w;
}

}  // namespace zkdesk
