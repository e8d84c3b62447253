#include "zkdesk/poly.hpp"

#include <cmath>
#include <cstdio>

namespace zkdesk {

Poly::Poly(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i].domain() != coeffs_[0].domain()) {
      throw ModeMismatch("polynomial coefficients in mixed modes");
    }
  }
  trim();
}

Poly Poly::monomial(const Scalar& c, std::size_t k) {
  std::vector<Scalar> v(k + 1, Scalar::zero(c.domain()));
  v[k] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Scalar Poly::eval(const Scalar& x) const {
  if (coeffs_.empty()) return Scalar::zero(x.domain());
  Scalar acc = coeffs_.back();
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
    acc *= x;
    acc += coeffs_[i];
  }
  return acc;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  const Poly& longer = a.coeffs_.size() >= b.coeffs_.size() ? a : b;
  const Poly& shorter = a.coeffs_.size() >= b.coeffs_.size() ? b : a;
  Poly r = longer;
  for (std::size_t i = 0; i < shorter.coeffs_.size(); ++i) r.coeffs_[i] += shorter.coeffs_[i];
  r.trim();
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Domain d = a.coeffs_[0].domain();
  if (b.coeffs_[0].domain() != d) throw ModeMismatch("polynomial product in mixed modes");
  std::vector<Scalar> out(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar::zero(d));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  Poly r;
  r.coeffs_ = std::move(out);
  r.trim();
  return r;
}

Poly operator*(const Poly& a, const Scalar& c) {
  Poly r = a;
  for (auto& x : r.coeffs_) x *= c;
  r.trim();
  return r;
}

void Poly::add_scaled(const Poly& other, const Scalar& c) {
  if (other.is_zero() || c.is_zero()) return;
  if (coeffs_.size() < other.coeffs_.size()) {
    coeffs_.resize(other.coeffs_.size(), Scalar::zero(c.domain()));
  }
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i] * c;
  trim();
}

DivMod divmod(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw DivisionByZero("polynomial division by the zero polynomial");
  if (num.degree() < den.degree()) return {Poly{}, num};

  const auto& d = den.coeffs();
  std::vector<Scalar> rem = num.coeffs();
  const std::size_t dn = d.size() - 1;
  const std::size_t qn = rem.size() - dn;
  std::vector<Scalar> quot(qn, Scalar::zero(d[0].domain()));
  const Scalar lead_inv = den.leading().inverse();

  for (std::size_t k = qn; k-- > 0;) {
    Scalar c = rem[k + dn] * lead_inv;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j <= dn; ++j) rem[k + j] -= c * d[j];
    quot[k] = std::move(c);
  }
  rem.resize(dn);
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly vanishing_poly(std::span<const Scalar> nodes) {
  if (nodes.empty()) return {};
  Domain dom = nodes[0].domain();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (nodes[i] == nodes[j]) throw DuplicateNode("duplicate node " + nodes[i].to_string());
    }
  }
  // Multiply in one linear factor at a time.
  std::vector<Scalar> c{Scalar::one(dom)};
  for (const auto& a : nodes) {
    std::vector<Scalar> next(c.size() + 1, Scalar::zero(dom));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= c[i] * a;
    }
    c = std::move(next);
  }
  return Poly(std::move(c));
}

LagrangeBasis::LagrangeBasis(std::vector<Scalar> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error("interpolation needs at least one node");
  vanishing_ = vanishing_poly(nodes_);
  inv_denominators_.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    Scalar d = Scalar::one(nodes_[i].domain());
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
      if (j != i) d *= nodes_[i] - nodes_[j];
    }
    inv_denominators_.push_back(d.inverse());
  }
}

LagrangeBasis LagrangeBasis::consecutive(Domain d, std::size_t n) {
  std::vector<Scalar> nodes;
  nodes.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) nodes.emplace_back(d, static_cast<long>(i));
  return LagrangeBasis(std::move(nodes));
}

Poly LagrangeBasis::interpolate(std::span<const Scalar> values) const {
  if (values.size() != nodes_.size()) {
    throw DimensionMismatch("interpolation expects " + std::to_string(nodes_.size()) +
                            " values, got " + std::to_string(values.size()));
  }
  std::vector<std::pair<std::size_t, Scalar>> sparse;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i].is_zero()) sparse.emplace_back(i, values[i]);
  }
  return interpolate_sparse(sparse);
}

Poly LagrangeBasis::interpolate_sparse(
    std::span<const std::pair<std::size_t, Scalar>> values) const {
  if (values.empty()) return {};
  const auto& z = vanishing_.coeffs();
  const std::size_t n = nodes_.size();
  Domain dom = nodes_[0].domain();
  std::vector<Scalar> acc(n, Scalar::zero(dom));
  for (const auto& [i, y] : values) {
    if (i >= n) throw DimensionMismatch("interpolation node index out of range");
    if (y.is_zero()) continue;
    const Scalar c = y * inv_denominators_[i];
    // Synthetic division of z by (x - node_i), folded into the accumulation.
    Scalar q = z[n];
    for (std::size_t k = n; k-- > 0;) {
      acc[k] += c * q;
      if (k > 0) q = z[k] + nodes_[i] * q;
    }
  }
  return Poly(std::move(acc));
}

Poly lagrange_interpolate(std::span<const std::pair<Scalar, Scalar>> points) {
  std::vector<Scalar> xs;
  std::vector<Scalar> ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const auto& [x, y] : points) {
    xs.push_back(x);
    ys.push_back(y);
  }
  return LagrangeBasis(std::move(xs)).interpolate(ys);
}

std::vector<double> to_doubles(const Poly& p) {
  std::vector<double> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(c.to_double());
  return out;
}

std::string render(const Poly& p, int places) {
  char buf[64];
  if (p.is_zero()) {
    std::snprintf(buf, sizeof buf, "[%.*f]", places, 0.0);
    return buf;
  }
  std::string s = "[";
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (i) s += ", ";
    std::snprintf(buf, sizeof buf, "%.*f", places, p.coeffs()[i].to_double());
    s += buf;
  }
  return s + "]";
}

}  // namespace zkdesk
