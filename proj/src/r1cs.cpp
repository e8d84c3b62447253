#include "zkdesk/r1cs.hpp"

#include <algorithm>

#include "zkdesk/kernels.hpp"

namespace zkdesk {

LinearCombination operator+(LinearCombination a, const LinearCombination& b) {
  for (const auto& [w, c] : b) {
    auto it = a.find(w);
    if (it == a.end()) {
      a.emplace(w, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) a.erase(it);
    }
  }
  return a;
}

LinearCombination operator*(LinearCombination a, const Scalar& c) {
  if (c.is_zero()) return {};
  for (auto& [w, x] : a) x *= c;
  return a;
}

LinearCombination operator-(LinearCombination a, const LinearCombination& b) {
  for (const auto& [w, c] : b) {
    auto it = a.find(w);
    if (it == a.end()) {
      a.emplace(w, -c);
    } else {
      it->second -= c;
      if (it->second.is_zero()) a.erase(it);
    }
  }
  return a;
}

bool ConstraintSystem::is_public(std::size_t wire) const {
  return std::find(public_wires.begin(), public_wires.end(), wire) != public_wires.end();
}

std::vector<std::size_t> ConstraintSystem::private_wires() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < num_wires; ++j) {
    if (!is_public(j)) out.push_back(j);
  }
  return out;
}

std::vector<Scalar> dense(const LinearCombination& lc, std::size_t width, Domain d) {
  std::vector<Scalar> out(width, Scalar::zero(d));
  for (const auto& [w, c] : lc) out.at(w) = c;
  return out;
}

ConstraintSystem compile_to_r1cs(const FlatProgram& fp) {
  ConstraintSystem cs;
  cs.domain = fp.domain;
  cs.num_wires = fp.wires.size();
  cs.public_wires = fp.public_wires;
  cs.wire_names = fp.wires;
  const LinearCombination one{{FlatProgram::kOneWire, Scalar::one(fp.domain)}};
  for (const auto& g : fp.gates) {
    Constraint row;
    row.v = g.left;
    row.w = g.kind == Gate::Kind::Add ? one : g.right;
    row.k = {{g.out, Scalar::one(fp.domain)}};
    cs.rows.push_back(std::move(row));
  }
  return cs;
}

WitnessVector generate_witness(const FlatProgram& fp, const Scalar& input) {
  return {fp.forward(input)};
}

std::optional<std::size_t> first_violation(const ConstraintSystem& cs, const WitnessVector& t) {
  if (t.t.size() != cs.num_wires) {
    throw DimensionMismatch("witness has " + std::to_string(t.t.size()) + " entries, system has " +
                            std::to_string(cs.num_wires) + " wires");
  }
  for (const auto& x : t.t) {
    if (x.domain() != cs.domain) throw ModeMismatch("witness is not in the system's domain");
  }
  return kernels::omp::first_violation(cs.rows, t.t);
}

bool is_satisfied(const ConstraintSystem& cs, const WitnessVector& t) {
  return !first_violation(cs, t).has_value();
}

R1csBuilder::R1csBuilder(Domain d) : d_(d) {
  alloc("one", Scalar::one(d), true);
  public_.push_back(0);
}

std::size_t R1csBuilder::alloc(const std::string& name, const Scalar& value, bool assigned) {
  values_.push_back(value);
  assigned_.push_back(assigned);
  names_.push_back(name);
  return values_.size() - 1;
}

std::size_t R1csBuilder::public_input(const std::string& name, const Scalar& value) {
  std::size_t w = alloc(name, value, true);
  public_.push_back(w);
  return w;
}

std::size_t R1csBuilder::private_input(const std::string& name, const Scalar& value) {
  return alloc(name, value, true);
}

LinearCombination R1csBuilder::lc(std::size_t wire) const {
  return {{wire, Scalar::one(d_)}};
}

LinearCombination R1csBuilder::constant(const Scalar& c) const {
  if (c.is_zero()) return {};
  return {{0, c}};
}

Scalar R1csBuilder::value(const LinearCombination& lc) const { return evaluate(lc, values_); }

std::size_t R1csBuilder::mul(const LinearCombination& a, const LinearCombination& b,
                             const std::string& name) {
  std::size_t w = alloc(name, value(a) * value(b), true);
  rows_.push_back({a, b, lc(w)});
  return w;
}

void R1csBuilder::mul_into(const LinearCombination& a, const LinearCombination& b,
                           std::size_t out) {
  if (!assigned_.at(out)) {
    values_[out] = value(a) * value(b);
    assigned_[out] = true;
  }
  rows_.push_back({a, b, lc(out)});
}

void R1csBuilder::constrain(LinearCombination v, LinearCombination w, LinearCombination k) {
  rows_.push_back({std::move(v), std::move(w), std::move(k)});
}

ConstraintSystem R1csBuilder::system() const {
  ConstraintSystem cs;
  cs.domain = d_;
  cs.num_wires = values_.size();
  cs.rows = rows_;
  cs.public_wires = public_;
  cs.wire_names = names_;
  return cs;
}

}  // namespace zkdesk
