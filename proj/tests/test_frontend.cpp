#include <doctest.h>

#include "support.hpp"
#include "zkdesk/frontend.hpp"

using namespace zkdesk;
using ref::q;

TEST_CASE("parse the running example") {
  const Ast ast = parse_source(kExampleSource);
  CHECK(ast.function == "f");
  CHECK(ast.param == "x");
  REQUIRE(ast.body.size() == 1);
  CHECK(ast.body[0].target == "y");
  CHECK(ast.body[0].value.kind == Expr::Kind::Pow);
  CHECK(ast.body[0].value.exponent == 3);
  // (x + y) + 5
  CHECK(ast.result.kind == Expr::Kind::Add);
  CHECK(ast.result.operands[0].kind == Expr::Kind::Add);
  CHECK(ast.result.operands[1].kind == Expr::Kind::Literal);
  CHECK(interpret(ast, q(3)) == q(35));
}

TEST_CASE("identity function and one-line def") {
  const Ast ast = parse_source("def f(x): return x");
  CHECK(ast.body.empty());
  CHECK(ast.result.kind == Expr::Kind::Var);
  const FlatProgram fp = flatten(ast, ref::Q);
  REQUIRE(fp.gates.size() == 1);
  CHECK(fp.gates[0].kind == Gate::Kind::Mul);
  CHECK(fp.gates[0].out == fp.out_wire());
  CHECK(fp.gates[0].right == LinearCombination{{0, q(1)}});
  CHECK(fp.forward(q(-4))[2] == q(-4));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_source("def f(x): return z"), ParseError);
  CHECK_THROWS_AS(parse_source("def f(x):\n  y = 1\n  y = 2\n  return y"), ParseError);
  CHECK_THROWS_AS(parse_source("def f(x):\n  y = x / 2\n  return y"), ParseError);
  CHECK_THROWS_AS(parse_source("def f(x):\n  return x**0"), ParseError);
  CHECK_THROWS_AS(parse_source("def f(x):\n  y = x +\n  return y"), ParseError);
  CHECK_THROWS_AS(parse_source("def f(x):\n  out = x\n  return out"), ParseError);
  CHECK_THROWS_AS(parse_source("f(x): return x"), ParseError);
  CHECK_THROWS_AS(parse_source("def f(x):\n  y = x\n"), ParseError);
  try {
    parse_source("def f(x):\n  y = x $ 2\n  return y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 9);
  }
}

TEST_CASE("comments and whitespace") {
  const Ast ast = parse_source("# cube\ndef  f ( x ) :\n\n   y = x ** 3   # cube\n return x+y+5\n");
  CHECK(interpret(ast, q(2)) == q(15));
}

TEST_CASE("flatten the running example") {
  const FlatProgram fp = flatten(parse_source(kExampleSource), ref::Q);
  CHECK(fp.wires == std::vector<std::string>{"one", "x", "out", "sym1", "y", "sym2"});
  CHECK(fp.public_wires == std::vector<std::size_t>{0, 2});
  REQUIRE(fp.gates.size() == 4);
  CHECK(describe(fp) == "sym1 = x * x\ny = sym1 * x\nsym2 = x + y\nout = sym2 + 5\n");
  CHECK(fp.gates[2].kind == Gate::Kind::Add);
  CHECK(fp.gates[3].left == LinearCombination{{0, q(5)}, {5, q(1)}});
  CHECK(fp.forward(q(3))[fp.out_wire()] == q(35));
}

TEST_CASE("gate count is ops plus exponent expansion") {
  // 2 mul + 1 sub + 1 add, x**4 -> 3 mul
  const FlatProgram fp = flatten(parse_source("def f(x):\n  a = x*x*3\n  b = a - x**4\n  return b + 1"),
                                 Domain::default_field());
  CHECK(fp.gates.size() == 7);
  // copy gates for bare-name assignment and return
  const FlatProgram cp = flatten(parse_source("def f(x):\n  a = x\n  return a"), ref::Q);
  CHECK(cp.gates.size() == 2);
}

TEST_CASE("flattening preserves semantics on random programs") {
  gen::Generator g(11);
  const Domain F = Domain::default_field();
  for (int i = 0; i < 200; ++i) {
    const gen::Program p = g.program(20, F);
    const Ast ast = parse_source(p.source);
    const FlatProgram fp = flatten(ast, F);
    for (long x : {0L, 1L, -3L, static_cast<long>(g.rng()() % 1000)}) {
      const Scalar xs(F, x);
      const Scalar want = p.run(xs);
      CHECK(interpret(ast, xs) == want);
      CHECK(fp.forward(xs)[fp.out_wire()] == want);
    }
  }
}

TEST_CASE("wire order is deterministic") {
  const char* src = "def g(a):\n  b = a*a + a\n  c = b**2 - 7\n  return c*b";
  const FlatProgram a = flatten(parse_source(src), ref::Q);
  const FlatProgram b = flatten(parse_source(src), ref::Q);
  CHECK(a.wires == b.wires);
  CHECK(describe(a) == describe(b));
  CHECK(a.wires[1] == "a");
}
