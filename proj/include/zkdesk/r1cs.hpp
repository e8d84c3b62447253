#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "zkdesk/frontend.hpp"
#include "zkdesk/scalar.hpp"

namespace zkdesk {

/// One rank-1 constraint (t.v) * (t.w) - (t.k) = 0. Stored sparsely; use
/// dense() for the full-width vectors.
struct Constraint {
  LinearCombination v;
  LinearCombination w;
  LinearCombination k;
};

struct ConstraintSystem {
  Domain domain;
  std::size_t num_wires = 0;
  std::vector<Constraint> rows;
  std::vector<std::size_t> public_wires;
  /// Optional wire names (same length as num_wires when present).
  std::vector<std::string> wire_names;

  std::size_t num_rows() const { return rows.size(); }
  bool is_public(std::size_t wire) const;
  std::vector<std::size_t> private_wires() const;
};

std::vector<Scalar> dense(const LinearCombination& lc, std::size_t width, Domain d);

struct WitnessVector {
  std::vector<Scalar> t;
};

/// Mul gate L*R=out -> (L, R, e_out); Add gate -> (L, e_one, e_out).
ConstraintSystem compile_to_r1cs(const FlatProgram& fp);

/// Forward-evaluates the circuit at `input`; t[0] = 1.
WitnessVector generate_witness(const FlatProgram& fp, const Scalar& input);

/// True iff every row holds exactly. Throws DimensionMismatch on a length
/// mismatch and ModeMismatch if the witness is in another domain.
bool is_satisfied(const ConstraintSystem& cs, const WitnessVector& t);

/// Index of the first violated row, if any.
std::optional<std::size_t> first_violation(const ConstraintSystem& cs, const WitnessVector& t);

/// Incremental constraint builder for hand-written circuits. Every wire carries
/// a value, so building with real inputs yields the witness alongside the
/// constraints. Rows never depend on values.
class R1csBuilder {
 public:
  explicit R1csBuilder(Domain d);

  Domain domain() const { return d_; }
  static constexpr std::size_t one() { return 0; }

  std::size_t public_input(const std::string& name, const Scalar& value);
  std::size_t private_input(const std::string& name, const Scalar& value);

  LinearCombination lc(std::size_t wire) const;
  LinearCombination constant(const Scalar& c) const;
  LinearCombination constant(long c) const { return constant(Scalar(d_, c)); }
  Scalar value(const LinearCombination& lc) const;
  Scalar value(std::size_t wire) const { return values_.at(wire); }

  /// New private wire `name` constrained to a*b.
  std::size_t mul(const LinearCombination& a, const LinearCombination& b,
                  const std::string& name);
  /// Constrains a*b = existing wire `out`. If `out` has no value yet it
  /// receives a*b; a preassigned value is left alone so a dishonest input shows
  /// up as a violated row.
  void mul_into(const LinearCombination& a, const LinearCombination& b, std::size_t out);
  /// Raw row.
  void constrain(LinearCombination v, LinearCombination w, LinearCombination k);

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_wires() const { return values_.size(); }

  ConstraintSystem system() const;
  WitnessVector witness() const { return {values_}; }

 private:
  std::size_t alloc(const std::string& name, const Scalar& value, bool assigned);

  Domain d_;
  std::vector<Scalar> values_;
  std::vector<bool> assigned_;
  std::vector<std::string> names_;
  std::vector<std::size_t> public_;
  std::vector<Constraint> rows_;
};

LinearCombination operator+(LinearCombination a, const LinearCombination& b);
LinearCombination operator-(LinearCombination a, const LinearCombination& b);
LinearCombination operator*(LinearCombination a, const Scalar& c);

}  // namespace zkdesk
