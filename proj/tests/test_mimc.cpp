#include <doctest.h>

#include <set>

#include "support.hpp"
#include "zkdesk/dap.hpp"
#include "zkdesk/mimc.hpp"
#include "zkdesk/rng.hpp"

using namespace zkdesk;

namespace {

const Domain L = Domain::of(PrimeField::get(dap::kLedgerModulus));
const mpz_class& P() { return L.field->modulus(); }

Scalar s(const char* dec) { return Scalar(L, mpz_class(dec)); }

}  // namespace

TEST_CASE("ledger modulus is 2^254 - 245 with 3 not dividing p - 1") {
  CHECK(P() == (mpz_class(1) << 254) - 245);
  CHECK(mpz_class(P() - 1) % 3 != 0);
  CHECK_THROWS(Mimc(Domain::default_field()));
  CHECK_THROWS(Mimc(Domain::rational()));
}

TEST_CASE("frozen reference values") {
  // computed once with the reference loop in support.hpp
  const Mimc h(L);
  CHECK(h.hash({Scalar::zero(L)}) ==
        s("15505612959799636506991973938394709964098581918408251148742216671638635439773"));
  CHECK(h.permute(Scalar::zero(L)) == h.hash({Scalar::zero(L)}));
  CHECK(h.hash({Scalar(L, 1), Scalar(L, 2)}) ==
        s("6063001843104087853948250369337722253740639287742579251590758436686471849656"));
  CHECK(h.hash({Scalar::zero(L), Scalar::zero(L)}) ==
        s("5528036746704068926633994548624312829865851996237239948953285403378000124173"));
  CHECK_THROWS(h.hash(std::span<const Scalar>()));
}

TEST_CASE("sponge matches the reference loop") {
  const Mimc h(L);
  SeededRng rng(1, "mimc");
  for (int i = 0; i < 100; ++i) {
    std::vector<Scalar> in;
    std::vector<mpz_class> raw;
    for (std::size_t k = 0; k < 1 + rng.next_u64() % 4; ++k) {
      in.push_back(rng.next_scalar(L));
      raw.push_back(in.back().field_value());
    }
    CHECK(h.hash(in).field_value() == oracle::mimc(raw, P()));
  }
}

TEST_CASE("permutation is injective and length matters") {
  const Mimc h(L);
  SeededRng rng(2, "mimc-inj");
  std::set<mpz_class> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(h.permute(rng.next_scalar(L)).field_value());
  CHECK(seen.size() == 1000);
  for (int i = 0; i < 100; ++i) {
    const Scalar a = rng.next_scalar(L);
    CHECK_FALSE(h.hash({a}) == h.hash({a, Scalar::zero(L)}));
  }
}

TEST_CASE("prf separates keys") {
  const Mimc h(L);
  SeededRng rng(3, "prf");
  const Scalar x = rng.next_scalar(L);
  for (int i = 0; i < 100; ++i) {
    const Scalar k1 = rng.next_scalar(L), k2 = rng.next_scalar(L);
    CHECK(h.prf(k1, x) == h.prf(k1, x));
    CHECK_FALSE(h.prf(k1, x) == h.prf(k2, x));
  }
}

TEST_CASE("gadget rows agree with the native hash") {
  const Mimc h(L);
  R1csBuilder b(L);
  const auto a = b.private_input("a", Scalar(L, 5));
  const auto c = b.private_input("c", Scalar(L, 9));
  const auto out = h.hash_gadget(b, {b.lc(a), b.lc(c) + b.constant(1)});
  CHECK(b.num_rows() == 2 * 2 * 11);
  CHECK(b.value(out) == h.hash({Scalar(L, 5), Scalar(L, 10)}));
  CHECK(is_satisfied(b.system(), b.witness()));

  R1csBuilder b2(L);
  const auto y = b2.public_input("y", Scalar(L, 1));
  const auto x = b2.private_input("x", Scalar(L, 0));
  h.permute_gadget(b2, b2.lc(x), y);
  CHECK_FALSE(is_satisfied(b2.system(), b2.witness()));
}
