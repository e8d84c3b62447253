#include "zkdesk/kernels.hpp"

#include <exception>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zkdesk::kernels {

namespace {

bool row_holds(const Constraint& row, const std::vector<Scalar>& t) {
  return evaluate(row.v, t) * evaluate(row.w, t) == evaluate(row.k, t);
}

void check_weights(const std::vector<Poly>& polys, const std::vector<Scalar>& weights) {
  if (polys.size() != weights.size()) {
    throw DimensionMismatch("weighted sum over " + std::to_string(polys.size()) +
                            " polynomials with " + std::to_string(weights.size()) + " weights");
  }
  if (weights.empty()) return;
  Domain d = weights[0].domain();
  for (std::size_t j = 0; j < polys.size(); ++j) {
    if (weights[j].domain() != d) throw ModeMismatch("weights in mixed modes");
    if (!polys[j].is_zero() && polys[j].coeffs()[0].domain() != d) {
      throw ModeMismatch("polynomial and weight in different modes");
    }
  }
}

std::size_t max_length(const std::vector<Poly>& polys) {
  std::size_t n = 0;
  for (const auto& p : polys) n = std::max(n, p.coeffs().size());
  return n;
}

// Exceptions must not cross an OpenMP region boundary; the first one raised
// inside is captured and rethrown by the calling thread.
class ExceptionSlot {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical(zkdesk_exception_slot)
#endif
      if (!ptr_) ptr_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (ptr_) std::rethrow_exception(ptr_);
  }

 private:
  std::exception_ptr ptr_;
};

void check_width(const std::vector<Scalar>& t) {
  if (t.empty()) throw DimensionMismatch("empty witness");
}

}  // namespace

// --- serial reference ------------------------------------------------------

namespace serial {

std::optional<std::size_t> first_violation(const std::vector<Constraint>& rows,
                                           const std::vector<Scalar>& t) {
  check_width(t);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!row_holds(rows[i], t)) return i;
  }
  return std::nullopt;
}

std::vector<Poly> interpolate_columns(const LagrangeBasis& basis,
                                      const std::vector<SparseColumn>& columns) {
  std::vector<Poly> out;
  out.reserve(columns.size());
  for (const auto& col : columns) out.push_back(basis.interpolate_sparse(col));
  return out;
}

Poly weighted_sum(const std::vector<Poly>& polys, const std::vector<Scalar>& weights) {
  check_weights(polys, weights);
  Poly acc;
  for (std::size_t j = 0; j < polys.size(); ++j) acc.add_scaled(polys[j], weights[j]);
  return acc;
}

std::vector<Scalar> eval_all(const std::vector<Poly>& polys, const Scalar& x) {
  std::vector<Scalar> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(p.eval(x));
  return out;
}

}  // namespace serial

// --- OpenMP ----------------------------------------------------------------

namespace omp {

std::optional<std::size_t> first_violation(const std::vector<Constraint>& rows,
                                           const std::vector<Scalar>& t) {
  check_width(t);
  const long n = static_cast<long>(rows.size());
  long first = std::numeric_limits<long>::max();
  ExceptionSlot err;
#pragma omp parallel for reduction(min : first) schedule(static)
  for (long i = 0; i < n; ++i) {
    err.run([&] {
      if (!row_holds(rows[i], t)) first = std::min(first, i);
    });
  }
  err.rethrow();
  if (first == std::numeric_limits<long>::max()) return std::nullopt;
  return static_cast<std::size_t>(first);
}

std::vector<Poly> interpolate_columns(const LagrangeBasis& basis,
                                      const std::vector<SparseColumn>& columns) {
  std::vector<Poly> out(columns.size());
  const long n = static_cast<long>(columns.size());
  ExceptionSlot err;
#pragma omp parallel for schedule(dynamic, 8)
  for (long j = 0; j < n; ++j) {
    err.run([&] { out[j] = basis.interpolate_sparse(columns[j]); });
  }
  err.rethrow();
  return out;
}

Poly weighted_sum(const std::vector<Poly>& polys, const std::vector<Scalar>& weights) {
  check_weights(polys, weights);
  const std::size_t len = max_length(polys);
  if (len == 0) return {};
  const Domain d = weights[0].domain();
  std::vector<Scalar> acc(len, Scalar::zero(d));
  const long n = static_cast<long>(len);
  ExceptionSlot err;
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) {
    err.run([&] {
      for (std::size_t j = 0; j < polys.size(); ++j) {
        const auto& c = polys[j].coeffs();
        if (static_cast<std::size_t>(k) < c.size() && !weights[j].is_zero()) {
          acc[k] += c[k] * weights[j];
        }
      }
    });
  }
  err.rethrow();
  return Poly(std::move(acc));
}

std::vector<Scalar> eval_all(const std::vector<Poly>& polys, const Scalar& x) {
  std::vector<Scalar> out(polys.size());
  const long n = static_cast<long>(polys.size());
  ExceptionSlot err;
#pragma omp parallel for schedule(dynamic, 16)
  for (long j = 0; j < n; ++j) {
    err.run([&] { out[j] = polys[j].eval(x); });
  }
  err.rethrow();
  return out;
}

}  // namespace omp

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace zkdesk::kernels
