#include "zkdesk/qap.hpp"

#include "zkdesk/kernels.hpp"

namespace zkdesk {

namespace {

enum class Matrix { V, W, K };

std::vector<kernels::SparseColumn> columns(const ConstraintSystem& cs, Matrix m) {
  std::vector<kernels::SparseColumn> cols(cs.num_wires);
  for (std::size_t i = 0; i < cs.rows.size(); ++i) {
    const auto& row = cs.rows[i];
    const LinearCombination& lc = m == Matrix::V ? row.v : m == Matrix::W ? row.w : row.k;
    for (const auto& [wire, c] : lc) cols.at(wire).emplace_back(i, c);
  }
  return cols;
}

}  // namespace

Qap r1cs_to_qap(const ConstraintSystem& cs) {
  if (cs.rows.empty()) throw Error("cannot build a QAP from an empty constraint system");
  const LagrangeBasis basis = LagrangeBasis::consecutive(cs.domain, cs.rows.size());
  Qap q;
  q.domain = cs.domain;
  q.num_gates = cs.rows.size();
  q.num_wires = cs.num_wires;
  q.public_wires = cs.public_wires;
  q.wire_names = cs.wire_names;
  q.v_polys = kernels::omp::interpolate_columns(basis, columns(cs, Matrix::V));
  q.w_polys = kernels::omp::interpolate_columns(basis, columns(cs, Matrix::W));
  q.k_polys = kernels::omp::interpolate_columns(basis, columns(cs, Matrix::K));
  q.z = basis.vanishing();
  return q;
}

Combined combine_with_witness(const Qap& q, const WitnessVector& t) {
  if (t.t.size() != q.num_wires) {
    throw DimensionMismatch("witness has " + std::to_string(t.t.size()) + " entries, QAP has " +
                            std::to_string(q.num_wires) + " wires");
  }
  return {kernels::omp::weighted_sum(q.v_polys, t.t), kernels::omp::weighted_sum(q.w_polys, t.t),
          kernels::omp::weighted_sum(q.k_polys, t.t)};
}

Poly target_poly(const Poly& v, const Poly& w, const Poly& k) { return v * w - k; }

Poly compute_h(const Poly& t, const Poly& z) {
  auto [quotient, remainder] = divmod(t, z);
  if (!remainder.is_zero()) throw NotDivisible(std::move(remainder));
  return quotient;
}

}  // namespace zkdesk
