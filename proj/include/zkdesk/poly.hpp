#pragma once

#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zkdesk/scalar.hpp"

namespace zkdesk {

/// Dense univariate polynomial, coefficients in ascending degree order.
///
/// Always canonical: no trailing zero coefficient, and the zero polynomial is
/// the empty coefficient list. The zero polynomial carries no mode; every
/// other polynomial has all coefficients in one Domain.
class Poly {
 public:
  /// Degree reported for the zero polynomial.
  static constexpr long kMinusInfinity = std::numeric_limits<long>::min();

  Poly() = default;
  /// Throws ModeMismatch if the coefficients do not share a mode.
  explicit Poly(std::vector<Scalar> coeffs);

  static Poly constant(const Scalar& c) { return Poly({c}); }
  /// c * x^k
  static Poly monomial(const Scalar& c, std::size_t k);

  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  long degree() const {
    return coeffs_.empty() ? kMinusInfinity : static_cast<long>(coeffs_.size()) - 1;
  }
  const Scalar& leading() const { return coeffs_.back(); }

  /// Horner evaluation. Throws ModeMismatch if `x` is in another mode.
  Scalar eval(const Scalar& x) const;
  Scalar operator()(const Scalar& x) const { return eval(x); }

  bool operator==(const Poly&) const = default;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  /// Schoolbook product.
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Scalar& c);

  /// Adds c * other into this polynomial.
  void add_scaled(const Poly& other, const Scalar& c);

 private:
  void trim();

  std::vector<Scalar> coeffs_;
};

struct DivMod {
  Poly quotient;
  Poly remainder;
};

/// Exact long division: num = quotient * den + remainder with
/// deg remainder < deg den. Throws DivisionByZero if den is zero.
DivMod divmod(const Poly& num, const Poly& den);

/// Monic product of (x - node). Throws DuplicateNode.
Poly vanishing_poly(std::span<const Scalar> nodes);

/// Precomputed Lagrange basis over a fixed node set. Interpolating many value
/// vectors over the same nodes reuses the vanishing polynomial and the
/// barycentric denominators; zero values cost nothing.
class LagrangeBasis {
 public:
  /// Throws DuplicateNode, or Error on an empty node set.
  explicit LagrangeBasis(std::vector<Scalar> nodes);

  /// Nodes 1..n in `d`.
  static LagrangeBasis consecutive(Domain d, std::size_t n);

  const std::vector<Scalar>& nodes() const { return nodes_; }
  const Poly& vanishing() const { return vanishing_; }
  std::size_t size() const { return nodes_.size(); }

  /// Unique polynomial of degree < n with p(nodes[i]) = values[i].
  Poly interpolate(std::span<const Scalar> values) const;
  /// Same, with the values given sparsely as (node index, value) pairs.
  Poly interpolate_sparse(std::span<const std::pair<std::size_t, Scalar>> values) const;

 private:
  std::vector<Scalar> nodes_;
  Poly vanishing_;
  std::vector<Scalar> inv_denominators_;
};

/// Unique polynomial of degree < points.size() through all points.
/// Throws DuplicateNode on repeated x values and Error on an empty set.
Poly lagrange_interpolate(std::span<const std::pair<Scalar, Scalar>> points);

/// Decimal rendering of each coefficient rounded to `places` digits.
std::vector<double> to_doubles(const Poly& p);
std::string render(const Poly& p, int places = 3);

}  // namespace zkdesk
