#pragma once

// Data-parallel inner loops of the pipeline. Each kernel exists twice with the
// same signature: `serial` is the plain reference loop, `omp` the OpenMP
// version used by the library. Tests check they agree; bench/ compares speed.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "zkdesk/poly.hpp"
#include "zkdesk/r1cs.hpp"

namespace zkdesk::kernels {

/// Column j of a constraint matrix as (row index, value) pairs.
using SparseColumn = std::vector<std::pair<std::size_t, Scalar>>;

namespace serial {

std::optional<std::size_t> first_violation(const std::vector<Constraint>& rows,
                                           const std::vector<Scalar>& t);
std::vector<Poly> interpolate_columns(const LagrangeBasis& basis,
                                      const std::vector<SparseColumn>& columns);
/// sum_j weights[j] * polys[j]
Poly weighted_sum(const std::vector<Poly>& polys, const std::vector<Scalar>& weights);
std::vector<Scalar> eval_all(const std::vector<Poly>& polys, const Scalar& x);

}  // namespace serial

namespace omp {

std::optional<std::size_t> first_violation(const std::vector<Constraint>& rows,
                                           const std::vector<Scalar>& t);
std::vector<Poly> interpolate_columns(const LagrangeBasis& basis,
                                      const std::vector<SparseColumn>& columns);
Poly weighted_sum(const std::vector<Poly>& polys, const std::vector<Scalar>& weights);
std::vector<Scalar> eval_all(const std::vector<Poly>& polys, const Scalar& x);

}  // namespace omp

/// Number of threads the omp kernels use (1 when built without OpenMP).
int max_threads();
void set_threads(int n);

}  // namespace zkdesk::kernels
