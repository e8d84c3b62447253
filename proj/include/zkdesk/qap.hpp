#pragma once

#include <cstddef>
#include <vector>

#include "zkdesk/error.hpp"
#include "zkdesk/poly.hpp"
#include "zkdesk/r1cs.hpp"

namespace zkdesk {

/// Quadratic arithmetic program: one polynomial per wire and matrix such that
/// v_polys[j](i) = rows[i-1].v[j] on the gate nodes i = 1..num_gates, plus the
/// vanishing polynomial z over those nodes.
struct Qap {
  Domain domain;
  std::size_t num_gates = 0;
  std::size_t num_wires = 0;
  std::vector<Poly> v_polys;
  std::vector<Poly> w_polys;
  std::vector<Poly> k_polys;
  Poly z;
  std::vector<std::size_t> public_wires;
  std::vector<std::string> wire_names;

  /// Gate node i (1-based) as a scalar.
  Scalar node(std::size_t i) const { return Scalar(domain, static_cast<long>(i)); }
};

/// Witness-weighted polynomials V = sum t_j v_j, and likewise W and K.
struct Combined {
  Poly v;
  Poly w;
  Poly k;
};

/// The target polynomial is not a multiple of z; the witness does not satisfy
/// every constraint.
class NotDivisible : public Error {
 public:
  explicit NotDivisible(Poly remainder)
      : Error("target polynomial is not divisible by the vanishing polynomial"),
        remainder_(std::move(remainder)) {}
  const Poly& remainder() const { return remainder_; }

 private:
  Poly remainder_;
};

/// Throws Error on a system with no rows.
Qap r1cs_to_qap(const ConstraintSystem& cs);

Combined combine_with_witness(const Qap& q, const WitnessVector& t);

/// T = V*W - K
Poly target_poly(const Poly& v, const Poly& w, const Poly& k);
inline Poly target_poly(const Combined& c) { return target_poly(c.v, c.w, c.k); }

/// H with T = H*Z; throws NotDivisible carrying the remainder otherwise.
Poly compute_h(const Poly& t, const Poly& z);

}  // namespace zkdesk
