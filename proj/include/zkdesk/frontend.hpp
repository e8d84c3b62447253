#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "zkdesk/scalar.hpp"

namespace zkdesk {

// ---------------------------------------------------------------------------
// Source language
//
//   def f(x):
//       y = x**3
//       return x + y + 5
//
// One function of one parameter, single-assignment statements, one return.
// Expressions: names, non-negative integer literals, + - *, parentheses and
// `e**k` for a positive integer literal k.
// ---------------------------------------------------------------------------

/// The running example: x**3 + x + 5.
inline constexpr const char* kExampleSource =
    "def f(x):\n"
    "    y = x**3\n"
    "    return x + y + 5\n";

struct Expr {
  enum class Kind { Var, Literal, Add, Sub, Mul, Pow };

  Kind kind = Kind::Literal;
  std::string name;          // Var
  mpz_class literal;         // Literal
  std::uint32_t exponent = 0;  // Pow
  std::vector<Expr> operands;  // Add/Sub/Mul: 2, Pow: 1

  static Expr var(std::string n);
  static Expr lit(mpz_class v);
  static Expr binary(Kind k, Expr a, Expr b);
  static Expr power(Expr base, std::uint32_t k);

  bool is_atom() const { return kind == Kind::Var || kind == Kind::Literal; }
  std::string to_string() const;
};

struct Assignment {
  std::string target;
  Expr value;
};

struct Ast {
  std::string function;
  std::string param;
  std::vector<Assignment> body;
  Expr result;
};

/// Throws ParseError (with 1-based line and column) on syntax errors, use of
/// an undefined name, or reassignment.
Ast parse_source(std::string_view text);

/// Reference interpreter over any Domain.
Scalar interpret(const Ast& ast, const Scalar& input);

// ---------------------------------------------------------------------------
// Flat circuit
// ---------------------------------------------------------------------------

/// Sparse linear combination over wires; constants ride on wire 0 (`one`).
using LinearCombination = std::map<std::size_t, Scalar>;

Scalar evaluate(const LinearCombination& lc, const std::vector<Scalar>& wires);

struct Gate {
  enum class Kind { Mul, Add };

  Kind kind = Kind::Mul;
  LinearCombination left;
  /// For Add gates this is always {one: 1}.
  LinearCombination right;
  std::size_t out = 0;
};

struct FlatProgram {
  static constexpr std::size_t kOneWire = 0;

  Domain domain;
  /// [one, input, out, intermediates in creation order...]
  std::vector<std::string> wires;
  std::vector<std::size_t> public_wires;
  std::vector<Gate> gates;

  std::size_t input_wire() const { return 1; }
  std::size_t out_wire() const { return 2; }
  std::size_t wire_index(std::string_view name) const;

  /// Gate-by-gate forward evaluation; returns every wire value.
  std::vector<Scalar> forward(const Scalar& input) const;
};

/// Lowers the program to binary gates. Each +, -, * becomes one gate, `e**k`
/// becomes k-1 multiplication gates, and an assignment or return of a bare
/// name or literal becomes a copy gate (value * one).
FlatProgram flatten(const Ast& ast, Domain domain);

/// Human-readable "out = sym2 + 5" style listing, one gate per line.
std::string describe(const FlatProgram& fp);

}  // namespace zkdesk
