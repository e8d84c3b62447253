#include <doctest.h>

#include "support.hpp"
#include "zkdesk/r1cs.hpp"

using namespace zkdesk;
using ref::q;

namespace {

std::vector<Scalar> row(std::initializer_list<long> xs) {
  std::vector<Scalar> v;
  for (long x : xs) v.push_back(q(x));
  return v;
}

WitnessVector wit(std::initializer_list<long> xs) { return {row(xs)}; }

const FlatProgram& example() {
  static const FlatProgram fp = flatten(parse_source(kExampleSource), ref::Q);
  return fp;
}

}  // namespace

TEST_CASE("constraint rows of the running example") {
  const ConstraintSystem cs = compile_to_r1cs(example());
  REQUIRE(cs.rows.size() == 4);
  CHECK(cs.num_wires == 6);
  const std::vector<std::vector<Scalar>> V{row({0, 1, 0, 0, 0, 0}), row({0, 0, 0, 1, 0, 0}),
                                           row({0, 1, 0, 0, 1, 0}), row({5, 0, 0, 0, 0, 1})};
  const std::vector<std::vector<Scalar>> W{row({0, 1, 0, 0, 0, 0}), row({0, 1, 0, 0, 0, 0}),
                                           row({1, 0, 0, 0, 0, 0}), row({1, 0, 0, 0, 0, 0})};
  const std::vector<std::vector<Scalar>> K{row({0, 0, 0, 1, 0, 0}), row({0, 0, 0, 0, 1, 0}),
                                           row({0, 0, 0, 0, 0, 1}), row({0, 0, 1, 0, 0, 0})};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(dense(cs.rows[i].v, 6, ref::Q) == V[i]);
    CHECK(dense(cs.rows[i].w, 6, ref::Q) == W[i]);
    CHECK(dense(cs.rows[i].k, 6, ref::Q) == K[i]);
  }
  CHECK(cs.public_wires == std::vector<std::size_t>{0, 2});
  CHECK(cs.private_wires() == std::vector<std::size_t>{1, 3, 4, 5});
}

TEST_CASE("witness generation") {
  CHECK(generate_witness(example(), q(3)).t == row({1, 3, 35, 9, 27, 30}));
  CHECK(generate_witness(example(), q(0)).t == row({1, 0, 5, 0, 0, 0}));
  CHECK(generate_witness(example(), q(7)).t == row({1, 7, 355, 49, 343, 350}));
}

TEST_CASE("satisfaction and its corner cases") {
  const ConstraintSystem cs = compile_to_r1cs(example());
  CHECK(is_satisfied(cs, wit({1, 3, 35, 9, 27, 30})));
  CHECK_FALSE(is_satisfied(cs, wit({1, 3, 36, 9, 27, 30})));
  CHECK(first_violation(cs, wit({1, 3, 36, 9, 27, 30})) == 3);
  // The constraints alone do not pin the output value.
  CHECK(is_satisfied(cs, wit({1, -3, -25, 9, -27, -30})));
  CHECK_THROWS_AS(is_satisfied(cs, wit({1, 3, 35})), DimensionMismatch);
  const Domain F = Domain::default_field();
  CHECK_THROWS_AS(is_satisfied(cs, WitnessVector{std::vector<Scalar>(6, Scalar(F, 1))}), ModeMismatch);
}

TEST_CASE("every single-entry mutation of the example witness breaks a row") {
  const ConstraintSystem cs = compile_to_r1cs(example());
  const WitnessVector good = wit({1, 3, 35, 9, 27, 30});
  const auto A = oracle::Arith::rational();
  for (std::size_t j = 0; j < good.t.size(); ++j) {
    for (long delta : {1L, -1L, 7L}) {
      WitnessVector bad = good;
      bad.t[j] += q(delta);
      CHECK_FALSE(is_satisfied(cs, bad));
      CHECK_FALSE(oracle::rows_hold(A, cs, oracle::values(bad.t)));
    }
  }
}

TEST_CASE("completeness and dot-product oracle on random programs") {
  gen::Generator g(21);
  const Domain F = Domain::default_field();
  const auto A = oracle::Arith::of(F);
  for (int i = 0; i < 500; ++i) {
    const gen::Program p = g.program(20, F);
    const FlatProgram fp = flatten(parse_source(p.source), F);
    const ConstraintSystem cs = compile_to_r1cs(fp);
    CHECK(cs.rows.size() == fp.gates.size());
    const WitnessVector t = generate_witness(fp, Scalar(F, static_cast<long>(g.rng()() % 100000)));
    CHECK(is_satisfied(cs, t));
    CHECK(oracle::rows_hold(A, cs, oracle::values(t.t)));
    for (const auto& r : cs.rows) {
      // sparse storage: at most |LC| + 1 nonzeros per vector
      CHECK(r.k.size() == 1);
    }
  }
}

TEST_CASE("builder rows and preassigned outputs") {
  const Domain F = Domain::default_field();
  R1csBuilder b(F);
  const auto x = b.private_input("x", Scalar(F, 4));
  const auto pub = b.public_input("y", Scalar(F, 17));
  const auto sq = b.mul(b.lc(x), b.lc(x), "sq");
  b.mul_into(b.lc(sq) + b.constant(1), b.constant(1), pub);
  CHECK(b.num_rows() == 2);
  CHECK(is_satisfied(b.system(), b.witness()));
  CHECK(b.system().public_wires == std::vector<std::size_t>{0, pub});

  R1csBuilder wrong(F);
  const auto x2 = wrong.private_input("x", Scalar(F, 4));
  const auto pub2 = wrong.public_input("y", Scalar(F, 18));
  const auto sq2 = wrong.mul(wrong.lc(x2), wrong.lc(x2), "sq");
  wrong.mul_into(wrong.lc(sq2) + wrong.constant(1), wrong.constant(1), pub2);
  CHECK_FALSE(is_satisfied(wrong.system(), wrong.witness()));
}
